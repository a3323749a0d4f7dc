"""Weight modules presented on finite windows of the weight lattice.

A window is a finite set of lattice points, one basis vector per point.  Every
point g carries Kb-eigenvalues (the gl_{n+1} weight); simple generators move
g by +-(e_i - e_{i+1}).  Actions that would need a point outside the window
produce a ``LeavesWindow`` outcome instead of a silent zero.

Sign convention for modules over A^q: x_i raises the omega_i eigenvalue by q,
so v_g has omega-eigenvalues mu_i q^{g_i}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterable, Sequence

from .scalars import Field, Scalar, ScalarError, ToralScalar, field, parse_toral, render_scalar
from .uq.identities import CheckResult, defining_relations
from .uq.pbw import UqElement, uq_algebra
from .weylq import GwaElement, weyl_algebra

MODULE_RANK_CAP = 6
KINDS = ("gwa-weight", "highest-weight", "sl2-lq1-example")


class ModuleError(ValueError):
    pass


class SpecError(ModuleError):
    pass


class NotCompletelyPointedFamily(ModuleError):
    """Highest weight outside the completely pointed families."""


@dataclass(frozen=True)
class LeavesWindow:
    """The typed outcome of an action that needs points outside the window."""

    point: tuple
    reason: str = "leaves-window"

    def __bool__(self):
        return True


class _Exit(Exception):
    def __init__(self, point):
        super().__init__(point)
        self.point = point


def _acc(d: dict, key, c: Scalar) -> None:
    old = d.get(key)
    s = c if old is None else old + c
    if s.is_zero():
        d.pop(key, None)
    else:
        d[key] = s


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


# ---------------------------------------------------------------- specs
@dataclass(frozen=True)
class ModuleSpec:
    kind: str
    n: int
    omega: tuple[str, ...] | None = None
    lam: tuple[str, ...] | None = None
    params: tuple[str, ...] = ()
    radius: int = 3

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown module kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        if not isinstance(self.n, int) or not 1 <= self.n <= MODULE_RANK_CAP:
            raise SpecError(f"rank n={self.n!r} outside 1..{MODULE_RANK_CAP}")
        if not isinstance(self.radius, int) or self.radius < 1:
            raise SpecError(f"radius must be a positive integer, got {self.radius!r}")
        if self.kind == "gwa-weight" and (self.omega is None or len(self.omega) != self.n + 1):
            raise SpecError(f"gwa-weight spec needs {self.n + 1} omega entries")
        if self.kind == "highest-weight" and (self.lam is None or len(self.lam) != self.n):
            raise SpecError(f"highest-weight spec needs {self.n} lambda entries")
        if self.kind == "sl2-lq1-example" and self.n != 1:
            raise SpecError("the L(q+1) example has rank 1")

    @property
    def field(self) -> Field:
        return field(*self.params)

    def omega_toral(self) -> tuple[ToralScalar, ...]:
        return tuple(parse_toral(s, self.field) for s in self.omega)

    def lambda_toral(self) -> tuple[ToralScalar, ...]:
        return tuple(parse_toral(s, self.field) for s in self.lam)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "params": list(self.params), "radius": self.radius}
        if self.omega is not None:
            d["omega"] = list(self.omega)
        if self.lam is not None:
            d["lambda"] = list(self.lam)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict, radius: int | None = None, params: Sequence[str] | None = None) -> "ModuleSpec":
        try:
            kind = d["kind"]
            n = d["n"]
        except KeyError as exc:
            raise SpecError(f"module spec is missing field {exc.args[0]!r}") from None
        omega = d.get("omega")
        lam = d.get("lambda", d.get("lam"))
        p = params if params is not None else d.get("params", [])
        spec = cls(
            kind=kind,
            n=n,
            omega=tuple(str(s) for s in omega) if omega is not None else None,
            lam=tuple(str(s) for s in lam) if lam is not None else None,
            params=tuple(p),
            radius=radius if radius is not None else d.get("radius", 3),
        )
        # parse literals eagerly so malformed input fails here
        if spec.omega is not None:
            spec.omega_toral()
        if spec.lam is not None:
            spec.lambda_toral()
        return spec

    @classmethod
    def from_json(cls, text: str, **kw) -> "ModuleSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"module spec is not valid JSON: {exc}") from None
        if not isinstance(d, dict):
            raise SpecError("module spec must be a JSON object")
        return cls.from_dict(d, **kw)


# -------------------------------------------------------------- windows
class WeightModuleWindow:
    """Base class: subclasses supply points, weights and simple-generator steps."""

    kind = "window"

    def __init__(self, n: int, F: Field, radius: int):
        self.n = n
        self.field = F
        self.radius = radius
        self.alg = uq_algebra(n, F)
        self._letter_memo: dict = {}
        self._weights: dict = {}

    # to override ---------------------------------------------------
    def points(self) -> list:
        raise NotImplementedError

    def contains(self, g) -> bool:
        return g in self._point_set()

    def _point_set(self) -> frozenset:
        s = getattr(self, "_pset", None)
        if s is None:
            s = self._pset = frozenset(self.points())
        return s

    def compute_weight(self, g) -> tuple:
        raise NotImplementedError

    def gen_step(self, kind: str, i: int, g):
        """(coefficient, target) for E_i or F_i on v_g, None for zero; raises _Exit."""
        raise NotImplementedError

    def interior(self, depth: int = 1) -> list:
        return self.points()

    @property
    def spec(self) -> ModuleSpec | None:
        return getattr(self, "_spec", None)

    def is_finite(self) -> bool:
        return False

    # weights -------------------------------------------------------
    def weight(self, g) -> tuple:
        w = self._weights.get(g)
        if w is None:
            w = self._weights[g] = self.compute_weight(g)
        return w

    def sl_weight(self, g) -> tuple:
        w = self.weight(g)
        return tuple(w[i] / w[i + 1] for i in range(self.n))

    # actions -------------------------------------------------------
    def _apply_gen(self, g_sym, vec: dict) -> dict:
        kind = g_sym[0]
        out: dict = {}
        if kind in ("Kb", "K"):
            j = g_sym[1]
            p = g_sym[2] if len(g_sym) > 2 else 1
            for g, c in vec.items():
                w = self.weight(g)
                val = w[j - 1] if kind == "Kb" else w[j - 1] / w[j]
                _acc(out, g, c * val**p)
            return out
        for g, c in vec.items():
            step = self.gen_step(kind, g_sym[1], g)
            if step is not None:
                coeff, g2 = step
                _acc(out, g2, c * coeff)
        return out

    def apply_word(self, word, vec: dict) -> dict:
        """Apply a generator word (read left to right as a product) to a vector."""
        for g_sym in reversed(word):
            if not vec:
                break
            vec = self._apply_gen(g_sym, vec)
        return vec

    def _letter_at(self, positive: bool, p: int, g) -> dict:
        key = (positive, p, g)
        out = self._letter_memo.get(key)
        if out is None:
            out = {}
            for word, c in self.alg.letter_words(positive, p).items():
                for g2, c2 in self.apply_word(word, {g: self.field.one}).items():
                    _acc(out, g2, c * c2)
            self._letter_memo[key] = out
        return out

    def _apply_mono(self, mono, vec: dict) -> dict:
        f, k, e = mono
        for p in reversed(range(len(e))):
            for _ in range(e[p]):
                nxt: dict = {}
                for g, c in vec.items():
                    for g2, c2 in self._letter_at(True, p, g).items():
                        _acc(nxt, g2, c * c2)
                vec = nxt
        if any(k):
            nxt = {}
            for g, c in vec.items():
                w = self.weight(g)
                val = c
                for wj, kj in zip(w, k):
                    if kj:
                        val = val * wj**kj
                _acc(nxt, g, val)
            vec = nxt
        for p in reversed(range(len(f))):
            for _ in range(f[p]):
                nxt = {}
                for g, c in vec.items():
                    for g2, c2 in self._letter_at(False, p, g).items():
                        _acc(nxt, g2, c * c2)
                vec = nxt
        return vec

    def _act_words(self, u: UqElement, vec: dict) -> dict:
        out: dict = {}
        for mono, c in u.terms.items():
            for g, c2 in self._apply_mono(mono, vec).items():
                _acc(out, g, c * c2)
        return out

    def _as_vector(self, v) -> dict:
        if isinstance(v, dict):
            return {g: self.field.coerce(c) for g, c in v.items() if c}
        if not self.contains(v):
            raise ModuleError(f"point {v} is not in the window support")
        return {v: self.field.one}

    def act(self, u, v, route: str = "auto"):
        """Image of v (a point or {point: Scalar}) under u; LeavesWindow if the window is too small."""
        vec = self._as_vector(v)
        try:
            if isinstance(u, GwaElement):
                return self._act_gwa(u, vec)
            if isinstance(u, UqElement):
                if u.alg.n != self.n:
                    raise ModuleError(f"rank {u.alg.n} element acting on a rank {self.n} module")
                if route == "words" or not hasattr(self, "_act_gwa"):
                    return self._act_words(u, vec)
                return self._act_pi(u, vec)
            if isinstance(u, (tuple, list)):
                return self.apply_word(tuple(u), vec)
        except _Exit as exc:
            return LeavesWindow(exc.point)
        raise ModuleError(f"cannot act with {type(u).__name__}")

    def eigenvalue(self, u, g):
        """c with u v_g = c v_g, None if u v_g is not a multiple of v_g, LeavesWindow if undecided."""
        res = self.act(u, g)
        if isinstance(res, LeavesWindow):
            return res
        if not res:
            return self.field.zero
        if set(res) != {g}:
            return None
        return res[g]


def _toral_pm_one(t: ToralScalar) -> bool:
    return t.is_pm_one()


class GwaWindow(WeightModuleWindow):
    """Simple weight module of A^q_{n+1} with omega-seed mu, basis v_g, x_i v_g = v_{g+e_i}.

    Also a U_q(gl_{n+1})-module through pi (the pullback).
    """

    kind = "gwa-weight"

    def __init__(self, mu: Sequence[ToralScalar], radius: int, F: Field | None = None, spec=None):
        mu = tuple(mu)
        if not mu:
            raise ModuleError("empty seed")
        p = mu[0].p
        F = F or field(*(f"c{k + 1}" for k in range(p)))
        super().__init__(len(mu) - 1, F, radius)
        self.mu = mu
        self.A = weyl_algebra(self.n, F)
        self._spec = spec
        self.N = len(mu)
        self._t_memo: dict = {}
        self._w_memo: dict = {}
        # per coordinate support interval and whether each end is a genuine break
        self.lo, self.hi, self.lo_break, self.hi_break = [], [], [], []
        for m in mu:
            a = m.q_exponent() if not any(m.d_exps) else None
            lo, hi, lb, hb = -radius, radius, False, False
            if a is not None and m.u_exp % 2 == 0:
                # weight at h is +-q^{a+h}; the step h -> h+1 breaks when a + h = -1
                h = -a - 1
                if h >= 0:
                    if h <= radius:
                        hi, hb = h, True
                else:
                    if h + 1 >= -radius:
                        lo, lb = h + 1, True
            self.lo.append(lo)
            self.hi.append(hi)
            self.lo_break.append(lb)
            self.hi_break.append(hb)

    def __repr__(self):
        return f"GwaWindow(mu=({', '.join(str(m) for m in self.mu)}), radius={self.radius})"

    def points(self) -> list:
        pts = getattr(self, "_pts", None)
        if pts is None:
            pts = self._pts = list(product(*[range(l, h + 1) for l, h in zip(self.lo, self.hi)]))
        return pts

    def contains(self, g) -> bool:
        return len(g) == self.N and all(l <= x <= h for x, l, h in zip(g, self.lo, self.hi))

    def is_finite(self) -> bool:
        return all(self.lo_break) and all(self.hi_break)

    def interior(self, depth: int = 1) -> list:
        out = []
        for g in self.points():
            ok = True
            for i, x in enumerate(g):
                if not self.lo_break[i] and x - depth < self.lo[i]:
                    ok = False
                if not self.hi_break[i] and x + depth > self.hi[i]:
                    ok = False
            if ok:
                out.append(g)
        return out

    def toral_weight(self, g) -> tuple[ToralScalar, ...]:
        return tuple(m.times_qpow(x) for m, x in zip(self.mu, g))

    def omega_value(self, i: int, h: int) -> Scalar:
        key = (i, h)
        w = self._w_memo.get(key)
        if w is None:
            w = self._w_memo[key] = self.mu[i].times_qpow(h).to_scalar(self.field)
        return w

    def compute_weight(self, g) -> tuple:
        return tuple(self.omega_value(i, x) for i, x in enumerate(g))

    def t_value(self, i: int, h: int) -> Scalar:
        """y_i x_i on the omega_i-eigenvalue at coordinate h: [mu_i q^h; 1]."""
        key = (i, h)
        t = self._t_memo.get(key)
        if t is None:
            F = self.field
            w = self.omega_value(i, h)
            t = self._t_memo[key] = (F.q * w - (F.q * w).inverse()) / (F.q - F.qpow(-1))
        return t

    def _step_coord(self, i: int, h: int, e: int):
        """Coefficient and end coordinate for z_i^e on coordinate value h (0 for a break)."""
        c = self.field.one
        if e > 0:
            for _ in range(e):
                if self.t_value(i, h).is_zero():
                    return None
                if h + 1 > self.hi[i]:
                    raise _Exit(("coord", i, h + 1))
                h += 1
        else:
            for _ in range(-e):
                t = self.t_value(i, h - 1)
                if t.is_zero():
                    return None
                if h - 1 < self.lo[i]:
                    raise _Exit(("coord", i, h - 1))
                c = c * t
                h -= 1
        return c, h

    def apply_gwa_mono(self, mono, g):
        a, e = mono
        c = self.field.one
        target = list(g)
        exit_ = None
        # a genuine zero in any coordinate wins over leaving the window in another
        for i, ei in enumerate(e):
            if ei:
                try:
                    r = self._step_coord(i, g[i], ei)
                except _Exit as exc:
                    exit_ = exc
                    continue
                if r is None:
                    return None
                ci, target[i] = r
                c = c * ci
        if exit_ is not None:
            raise exit_
        target = tuple(target)
        if any(a):
            for i, ai in enumerate(a):
                if ai:
                    c = c * self.omega_value(i, target[i]) ** ai
        return c, target

    def _act_gwa(self, a: GwaElement, vec: dict) -> dict:
        if a.alg.n != self.n:
            raise ModuleError("rank mismatch between A^q element and module")
        out: dict = {}
        for g, cv in vec.items():
            for mono, c in a.terms.items():
                r = self.apply_gwa_mono(mono, g)
                if r is not None:
                    _acc(out, r[1], cv * c * r[0])
        return out

    def _act_pi(self, u: UqElement, vec: dict) -> dict:
        return self._act_gwa(self.A.pi(u), vec)

    def gen_step(self, kind: str, i: int, g):
        if kind == "E":
            mono = self.A.xy(i, i + 1)
        elif kind == "F":
            mono = self.A.xy(i + 1, i)
        elif kind == "x":
            mono = self.A.x(i)
        elif kind == "y":
            mono = self.A.y(i)
        else:
            raise ModuleError(f"unknown generator {kind}")
        ((m, _),) = mono.terms.items()
        return self.apply_gwa_mono(m, g)

    def degree(self, g) -> int:
        return sum(g)

    def euler_anchor(self) -> ToralScalar:
        xi = self.mu[0]
        for m in self.mu[1:]:
            xi = xi * m
        return xi


class ExteriorWindow(WeightModuleWindow):
    """The q-exterior power: basis = i-subsets S of {1..n+1}, Kb_j = sigma_j q^{[j in S]}.

    E_j moves j+1 to j with coefficient sigma_j sigma_{j+1}, F_j moves j to j+1 with coefficient 1.
    """

    kind = "exterior"

    def __init__(self, n: int, i: int, F: Field | None = None, signs: Sequence[int] | None = None):
        super().__init__(n, F or field(), 1)
        if not 0 <= i <= n + 1:
            raise ModuleError(f"exterior degree {i} outside 0..{n + 1}")
        self.degree_i = i
        self.signs = tuple(signs) if signs is not None else (1,) * (n + 1)
        if len(self.signs) != n + 1 or any(s not in (1, -1) for s in self.signs):
            raise ModuleError("signs must be n+1 entries of +-1")

    def points(self) -> list:
        pts = getattr(self, "_pts", None)
        if pts is None:
            pts = self._pts = sorted(
                (g for g in product((0, 1), repeat=self.n + 1) if sum(g) == self.degree_i), reverse=True
            )
        return pts

    def is_finite(self) -> bool:
        return True

    def compute_weight(self, g) -> tuple:
        return tuple(self.field.qpow(x) * s for x, s in zip(g, self.signs))

    def gen_step(self, kind: str, i: int, g):
        a, b = g[i - 1], g[i]
        if kind == "E" and a == 0 and b == 1:
            c = self.signs[i - 1] * self.signs[i]
            return self.field.coerce(c), g[: i - 1] + (1, 0) + g[i + 1:]
        if kind == "F" and a == 1 and b == 0:
            return self.field.one, g[: i - 1] + (0, 1) + g[i + 1:]
        return None


class LqWindow(WeightModuleWindow):
    """The U_q(sl_2) example L(q+1): v_k at lattice point (-k, k), 0 <= k <= radius.

    gl lift: Kb_1 = (1+q) q^-k, Kb_2 = q^k, so K = q^-2k (1+q).
    E v_k = [1+q; 1-k] v_{k-1}, F v_k = [k+1] v_{k+1}.
    """

    kind = "sl2-lq1-example"

    def __init__(self, radius: int = 10, F: Field | None = None, spec=None):
        super().__init__(1, F or field(), radius)
        self.top = self.field.one + self.field.q
        self._spec = spec

    def points(self) -> list:
        return [(-k, k) for k in range(self.radius + 1)]

    def interior(self, depth: int = 1) -> list:
        return [(-k, k) for k in range(self.radius + 1 - depth)]

    def compute_weight(self, g) -> tuple:
        k = g[1]
        return (self.top * self.field.qpow(-k), self.field.qpow(k))

    def vector(self, k: int):
        return (-k, k)

    def gen_step(self, kind: str, i: int, g):
        k = g[1]
        F = self.field
        if kind == "E":
            if k == 0:
                return None
            c = (F.qpow(1 - k) * self.top - F.qpow(k - 1) * self.top.inverse()) / (F.q - F.qpow(-1))
            return c, (-(k - 1), k - 1)
        if kind == "F":
            if k + 1 > self.radius:
                raise _Exit((-(k + 1), k + 1))
            return F.qint(k + 1), (-(k + 1), k + 1)
        raise ModuleError(f"unknown generator {kind}")


class DirectSumWindow(WeightModuleWindow):
    """Direct sum of windows; points are (summand index, point)."""

    kind = "direct-sum"

    def __init__(self, parts: Sequence[WeightModuleWindow]):
        parts = list(parts)
        if not parts or len({p.n for p in parts}) != 1:
            raise ModuleError("direct sum needs windows of one rank")
        super().__init__(parts[0].n, parts[0].field, max(p.radius for p in parts))
        self.parts = parts

    def points(self) -> list:
        return [(k, g) for k, p in enumerate(self.parts) for g in p.points()]

    def interior(self, depth: int = 1) -> list:
        return [(k, g) for k, p in enumerate(self.parts) for g in p.interior(depth)]

    def is_finite(self) -> bool:
        return all(p.is_finite() for p in self.parts)

    def compute_weight(self, g) -> tuple:
        k, h = g
        return self.parts[k].weight(h)

    def gen_step(self, kind: str, i: int, g):
        k, h = g
        r = self.parts[k].gen_step(kind, i, h)
        if r is None:
            return None
        return r[0], (k, r[1])


class GradedPiece(WeightModuleWindow):
    """The part of a pullback window where the Euler element acts by xi q^m."""

    kind = "graded-piece"

    def __init__(self, parent: GwaWindow, degree: int, points: Sequence, complete: bool):
        super().__init__(parent.n, parent.field, parent.radius)
        self.parent = parent
        self.degree = degree
        self._pts = sorted(points)
        self.complete = complete
        self.A = parent.A
        self.highest_weight = None
        self.highest_point = None

    def __repr__(self):
        return f"GradedPiece(degree={self.degree}, dim={len(self._pts)}, complete={self.complete})"

    @property
    def dimension(self) -> int:
        return len(self._pts)

    @property
    def spec(self):
        return self.parent.spec

    def points(self) -> list:
        return self._pts

    def is_finite(self) -> bool:
        return self.complete

    def interior(self, depth: int = 1) -> list:
        inner = set(self.parent.interior(depth))
        return [g for g in self._pts if g in inner]

    def compute_weight(self, g) -> tuple:
        return self.parent.weight(g)

    def gen_step(self, kind, i, g):
        return self.parent.gen_step(kind, i, g)

    def _act_gwa(self, a, vec):
        return self.parent._act_gwa(a, vec)

    def _act_pi(self, u, vec):
        return self.parent._act_pi(u, vec)

    def toral_weight(self, g):
        return self.parent.toral_weight(g)


# ------------------------------------------------------------ builders
def build_gwa_module(spec: ModuleSpec) -> GwaWindow:
    if spec.kind != "gwa-weight":
        raise SpecError(f"build_gwa_module needs a gwa-weight spec, got {spec.kind}")
    return GwaWindow(spec.omega_toral(), spec.radius, spec.field, spec=spec)


def lq1_example_module(radius: int = 10) -> LqWindow:
    spec = ModuleSpec(kind="sl2-lq1-example", n=1, radius=radius)
    return LqWindow(radius, spec=spec)


def build_module(spec: ModuleSpec) -> WeightModuleWindow:
    if spec.kind == "gwa-weight":
        return build_gwa_module(spec)
    if spec.kind == "highest-weight":
        w = highest_weight_module(spec.lambda_toral(), radius=spec.radius, F=spec.field)
        w._spec = spec
        return w
    return LqWindow(spec.radius, spec=spec)


def _piece_complete(w: GwaWindow, pts: Iterable) -> bool:
    """No degree-zero step from the piece reaches a point outside the window."""
    N = w.N
    for g in pts:
        for i in range(N):
            for j in range(N):
                if i == j:
                    continue
                # x_i y_j: y_j first, then x_i
                if w.t_value(j, g[j] - 1).is_zero():
                    continue
                if w.t_value(i, g[i]).is_zero():
                    continue
                if not (w.lo[j] <= g[j] - 1 and g[i] + 1 <= w.hi[i]):
                    return False
    return True


def decompose_pullback(w: GwaWindow) -> list[GradedPiece]:
    """Split the support by Euler degree sum(g); degree m has Euler eigenvalue xi q^m."""
    if not isinstance(w, GwaWindow):
        raise ModuleError("decompose_pullback needs a window built from a gwa spec")
    by_deg: dict[int, list] = {}
    for g in w.points():
        by_deg.setdefault(sum(g), []).append(g)
    pieces = []
    for m in sorted(by_deg):
        pts = by_deg[m]
        piece = GradedPiece(w, m, pts, _piece_complete(w, pts))
        hw = _find_highest(piece)
        if hw is not None:
            piece.highest_point, piece.highest_weight = hw
        pieces.append(piece)
    return pieces


def _find_highest(piece: GradedPiece):
    """The unique point killed by every E_i, with its sl weight, for complete pieces."""
    if not piece.complete:
        return None
    killed = []
    for g in piece.points():
        if all(piece.gen_step("E", i, g) is None for i in range(1, piece.n + 1)):
            killed.append(g)
    if len(killed) != 1:
        return None
    g = killed[0]
    return g, piece.sl_weight(g)


def is_completely_pointed(w: WeightModuleWindow, level: str = "gl") -> bool:
    """Every weight occurring in the window has a one-dimensional weight space (on-window)."""
    if level not in ("gl", "sl"):
        raise ModuleError("level must be 'gl' or 'sl'")
    seen = set()
    for g in w.points():
        key = w.weight(g) if level == "gl" else w.sl_weight(g)
        if key in seen:
            return False
        seen.add(key)
    return True


@dataclass(frozen=True)
class IrreducibilityVerdict:
    status: str  # irreducible-on-window | reducible | inconclusive-truncated
    separating: frozenset | None = None

    @property
    def irreducible(self) -> bool:
        return self.status == "irreducible-on-window"


def _moves(w: WeightModuleWindow, g) -> list:
    out = []
    for i in range(1, w.n + 1):
        for kind in ("E", "F"):
            try:
                r = w.gen_step(kind, i, g)
            except _Exit:
                continue
            if r is not None and w.contains(r[1]):
                out.append(r[1])
    return out


def is_irreducible_on_window(w: WeightModuleWindow) -> IrreducibilityVerdict:
    """Strong connectivity of the support under nonzero E_i, F_i moves.

    With one-dimensional weight spaces every submodule is spanned by basis vectors,
    so a set closed under the moves that misses a point is a proper submodule.
    """
    complete = getattr(w, "complete", None)
    if complete is False or (complete is None and not w.is_finite()):
        return IrreducibilityVerdict("inconclusive-truncated")
    pts = w.points()
    if not pts:
        return IrreducibilityVerdict("reducible", frozenset())
    adj = {g: _moves(w, g) for g in pts}
    for start in pts:
        seen = {start}
        stack = [start]
        while stack:
            g = stack.pop()
            for h in adj[g]:
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        if len(seen) != len(pts):
            return IrreducibilityVerdict("reducible", frozenset(seen))
    return IrreducibilityVerdict("irreducible-on-window")


# ------------------------------------------------------ highest weight
def _hw_seed_candidates(lam: Sequence[ToralScalar]) -> list[tuple[ToralScalar, ...]]:
    """Seeds mu = s * (lambda_{i,n+1})_i for which v_0 is killed by every x_i y_{i+1}."""
    n = len(lam)
    p = lam[0].p
    partial = [ToralScalar.one(p)]
    for x in reversed(lam):
        partial.append(partial[-1] * x)
    a = tuple(reversed(partial))  # a_i = lambda_i ... lambda_n, a_{n+1} = 1
    cands = []
    for t in a:
        for base in (ToralScalar.one(p), ToralScalar.qpow(-1, p)):
            for sign in (1, -1):
                s = (base * t.inverse()) * sign
                mu = tuple(s * x for x in a)
                if mu not in cands:
                    cands.append(mu)
    good = []
    qinv = ToralScalar.qpow(-1, p)
    for mu in cands:
        ok = True
        for i in range(n):
            if not (mu[i + 1].is_pm_one() or mu[i] in (qinv, -qinv)):
                ok = False
                break
        if ok:
            good.append(mu)
    return sorted(good)


def highest_weight_module(lam, radius: int = 3, F: Field | None = None, params: Sequence[str] = ()):
    """Window for L(lambda) with lambda in the completely pointed families.

    Realized as the degree-0 piece of a pullback window whenever a seed exists,
    otherwise (a q in a middle slot) as a sign-twisted q-exterior power.
    """
    from .classify import is_cp_highest_weight

    if F is None:
        F = field(*params)
    lam = tuple(parse_toral(x, F) if isinstance(x, str) else x for x in lam)
    n = len(lam)
    if not 1 <= n <= MODULE_RANK_CAP:
        raise ModuleError(f"rank {n} outside 1..{MODULE_RANK_CAP}")
    verdict = is_cp_highest_weight(lam)
    if not verdict.ok:
        raise NotCompletelyPointedFamily(
            f"highest weight ({', '.join(str(x) for x in lam)}) is not in a completely pointed family"
        )
    lam_s = tuple(x.to_scalar(F) for x in lam)
    for mu in _hw_seed_candidates(lam):
        w = GwaWindow(mu, radius, F)
        zero = (0,) * (n + 1)
        pts = [g for g in w.points() if sum(g) == 0]
        piece = GradedPiece(w, 0, pts, _piece_complete(w, pts))
        if any(piece.gen_step("E", i, zero) is not None for i in range(1, n + 1)):
            continue
        piece.highest_point, piece.highest_weight = zero, piece.sl_weight(zero)
        if piece.highest_weight != lam_s:
            continue
        piece.kind = "highest-weight"
        piece.lam = lam
        return piece
    # middle q-slot: exterior power twisted by signs
    qs = [k for k, x in enumerate(lam) if not x.is_pm_one()]
    if len(qs) == 1 and lam[qs[0]].q_exponent() == 1:
        slot = qs[0] + 1
        signs = [1] * (n + 1)
        for k in reversed(range(n)):
            signs[k] = signs[k + 1] * lam[k].sign
        w = ExteriorWindow(n, slot, F, signs)
        w.kind = "highest-weight"
        w.lam = lam
        top = tuple(1 if k < slot else 0 for k in range(n + 1))
        w.highest_point, w.highest_weight = top, w.sl_weight(top)
        if w.highest_weight == lam_s:
            return w
    raise NotCompletelyPointedFamily(f"no construction available for highest weight {lam}")


# ----------------------------------------------------------- relations
def check_relations(w: WeightModuleWindow, depth: int = 4, points: Iterable | None = None) -> list[CheckResult]:
    """Every defining relation of U_q(gl_{n+1}) kills every interior vector (word route)."""
    rels = defining_relations(w.n, w.field)
    pts = list(points) if points is not None else w.interior(depth)
    out = []
    for name, idx, terms in rels:
        bad = None
        checked = 0
        for g in pts:
            total: dict = {}
            try:
                for c, word in terms:
                    for h, c2 in w.apply_word(word, {g: w.field.one}).items():
                        _acc(total, h, c * c2)
            except _Exit:
                continue
            checked += 1
            if total:
                bad = (g, total)
                break
        if bad is not None:
            g, total = bad
            res = " + ".join(f"({render_scalar(c)})*v{list(h)}" for h, c in sorted(total.items()))
            out.append(CheckResult(name, tuple(idx) + (tuple(g),), "fail", res))
        else:
            out.append(CheckResult(name, tuple(idx), "pass" if checked or not pts else "inconclusive"))
    return out


# --------------------------------------------------------------- export
def _point_label(g) -> str:
    return ",".join(str(x) for x in _flatten(g))


def _flatten(g):
    for x in g:
        if isinstance(x, tuple):
            yield from _flatten(x)
        else:
            yield x


def _export_points(w: WeightModuleWindow, max_degree: int | None):
    pts = w.points()
    if max_degree is not None:
        pts = [g for g in pts if sum(_flatten(g)) <= max_degree]
    return sorted(pts)


def _edges(w: WeightModuleWindow, pts: list) -> list:
    keep = set(pts)
    if isinstance(w, GwaWindow):
        gens = [(k, i) for i in range(1, w.n + 2) for k in ("x", "y")]
    else:
        gens = [(k, i) for i in range(1, w.n + 1) for k in ("E", "F")]
    out = []
    for g in pts:
        for kind, i in gens:
            try:
                r = w.gen_step(kind, i, g)
            except _Exit:
                continue
            if r is not None and r[1] in keep:
                out.append((g, r[1], f"{kind}{i}", render_scalar(r[0])))
    return out


def window_to_json(w: WeightModuleWindow, max_degree: int | None = None) -> str:
    pts = _export_points(w, max_degree)
    doc = {
        "kind": w.kind,
        "n": w.n,
        "params": list(w.field.params),
        "radius": w.radius,
        "spec": w.spec.to_dict() if w.spec is not None else None,
        "max_degree": max_degree,
        "points": [
            {"point": list(_flatten(g)), "weight": [render_scalar(x) for x in w.weight(g)]} for g in pts
        ],
        "edges": [
            {"from": list(_flatten(a)), "to": list(_flatten(b)), "gen": gen, "coeff": c}
            for a, b, gen, c in _edges(w, pts)
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def window_from_json(text: str) -> WeightModuleWindow:
    """Rebuild a window from an export; the export must carry its module spec."""
    doc = json.loads(text)
    spec = doc.get("spec")
    if spec is None:
        raise SpecError("export carries no module spec; cannot rebuild")
    return build_module(ModuleSpec.from_dict(spec))


def window_to_dot(w: WeightModuleWindow, max_degree: int | None = None) -> str:
    pts = _export_points(w, max_degree)
    lines = ["digraph window {", "  node [shape=box];"]
    for g in pts:
        wt = ", ".join(render_scalar(x) for x in w.weight(g))
        lines.append(f'  "{_point_label(g)}" [label="({_point_label(g)})\\n{wt}"];')
    for a, b, gen, c in _edges(w, pts):
        lines.append(f'  "{_point_label(a)}" -> "{_point_label(b)}" [label="{gen}: {c}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def fock_spec(n: int, radius: int) -> ModuleSpec:
    return ModuleSpec(kind="gwa-weight", n=n, omega=("1",) * (n + 1), radius=radius)
