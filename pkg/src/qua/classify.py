"""Classification tools for completely pointed weight modules.

Covers the 2x2 singular-matrix criterion, the highest-weight family predicate,
the nilpotent / torsion-free partition of roots, invariant vectors, the solver
for the gl-lift mu of a module, the phi/kappa consistency equations for
torsion-free modules and kernel-of-pi annihilation checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .modrep import GwaWindow, LeavesWindow, ModuleError, WeightModuleWindow, _Exit
from .rootsys import NoAdaptedBase, Root, all_roots, find_adapted_base, positive_system
from .scalars import (
    Field,
    NotToral,
    NotToralSquare,
    Scalar,
    ScalarError,
    ToralScalar,
    bracket,
    field,
    render_scalar,
    toral_sqrt,
)
from .uq.identities import CheckResult
from .uq.pbw import UqElement, uq_algebra
from .weylq import weyl_algebra


class ClassifyError(ValueError):
    pass


class ProportionalityError(ClassifyError):
    """y x v is not a multiple of v."""


class WindowTooSmall(ClassifyError):
    pass


class NoNilpotentRoots(ClassifyError):
    """find_invariant_vector needs N nonempty."""


class WindowExhausted(ClassifyError):
    pass


class RequiresQuadraticExtension(ClassifyError):
    pass


class InconsistentModuleData(ClassifyError):
    pass


class NotInKernel(ClassifyError):
    pass


# ----------------------------------------------------------- letters
def E_root(alg, a: int, b: int) -> UqElement:
    """E_{e_a - e_b}: the E letter for a < b, the F letter of (b, a) for a > b."""
    return alg.letter(Root(a, b))


def _eigen(w: WeightModuleWindow, u: UqElement, g) -> Scalar:
    res = w.act(u, g)
    if isinstance(res, LeavesWindow):
        raise WindowTooSmall(f"action at {g} leaves the window")
    if not res:
        return w.field.zero
    if set(res) != {g}:
        raise ProportionalityError(f"image of v at {g} is not a multiple of v")
    return res[g]


# ------------------------------------------------------- determinants
def gamma_det(x1, x2, y1, y2, w: WeightModuleWindow, g) -> Scalar:
    """gamma_11 gamma_22 - gamma_12 gamma_21 with y_i x_j v = gamma_ij v."""
    gam = [[_eigen(w, y * x, g) for x in (x1, x2)] for y in (y1, y2)]
    return gam[0][0] * gam[1][1] - gam[0][1] * gam[1][0]


def quadruples(n: int) -> list[tuple[str, tuple, tuple]]:
    """(family, indices, (x1, x2, y1, y2) as root-letter products) used by the criterion.

    Each entry of the 4-tuple is a tuple of (a, b) pairs meaning E_{e_a - e_b} letters.
    """
    out = []
    for i in range(1, n):
        out.append(("lambda1", (i,), (
            ((i + 2, i),),
            ((i + 1, i), (i + 2, i + 1)),
            ((i, i + 2),),
            ((i, i + 1), (i + 1, i + 2)),
        )))
    for i, j, k, l in combinations(range(1, n + 2), 4):
        out.append(("lambda2", (i, j, k, l), (
            ((l, i),),
            ((k, i), (l, k)),
            ((i, l),),
            ((i, j), (j, l)),
        )))
    for i in range(2, n):
        out.append(("c-square", (i,), (
            ((i + 1, i - 1), (i + 2, i)),
            ((i + 1, i), (i + 2, i - 1)),
            ((i - 1, i + 1), (i, i + 2)),
            ((i, i + 1), (i - 1, i + 2)),
        )))
    return out


def _letters(alg, pairs) -> UqElement:
    x = alg.one()
    for a, b in pairs:
        x = x * E_root(alg, a, b)
    return x


def _torus_part(u: UqElement) -> dict:
    """Pure Kb terms of a weight-zero element: its value on any highest weight vector."""
    zr = (0,) * u.alg.r
    return {k: c for (f, k, e), c in u.terms.items() if f == zr and e == zr}


def _laurent_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            s = out.get(k)
            s = ca * cb if s is None else s + ca * cb
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
    return out


def _laurent_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = -c if s is None else s - c
        if s.is_zero():
            out.pop(k, None)
        else:
            out[k] = s
    return out


@lru_cache(maxsize=None)
def residual_polynomials(n: int, F: Field | None = None) -> tuple:
    """Determinants of every quadruple on a highest weight vector, as Laurent polynomials in Kb.

    Returns a tuple of (family, indices, {kb_exps: coeff}).
    """
    F = F or field()
    alg = uq_algebra(n, F)
    out = []
    for fam, idx, (x1, x2, y1, y2) in quadruples(n):
        xs = [_letters(alg, x1), _letters(alg, x2)]
        ys = [_letters(alg, y1), _letters(alg, y2)]
        g = [[_torus_part(y * x) for x in xs] for y in ys]
        det = _laurent_sub(_laurent_mul(g[0][0], g[1][1]), _laurent_mul(g[0][1], g[1][0]))
        out.append((fam, idx, det))
    return tuple(out)


def gl_lift(lam: Sequence[ToralScalar]) -> tuple[ToralScalar, ...]:
    """mu with mu_{n+1} = 1 and mu_i / mu_{i+1} = lambda_i."""
    p = lam[0].p
    mu = [ToralScalar.one(p)]
    for x in reversed(lam):
        mu.append(mu[-1] * x)
    return tuple(reversed(mu))


def _eval_laurent(poly: dict, mu: Sequence[ToralScalar], F: Field) -> Scalar:
    total = F.zero
    for k, c in poly.items():
        m = ToralScalar.one(mu[0].p)
        for x, e in zip(mu, k):
            if e:
                m = m * x**e
        total = total + c * m.to_scalar(F)
    return total


def determinant_residuals(lam: Sequence[ToralScalar], F: Field | None = None) -> list[tuple[str, tuple, Scalar]]:
    """Value of every quadruple determinant at the highest weight lambda."""
    lam = tuple(lam)
    p = lam[0].p
    F = F or field(*(f"c{k + 1}" for k in range(p)))
    mu = gl_lift(lam)
    return [(fam, idx, _eval_laurent(poly, mu, F)) for fam, idx, poly in residual_polynomials(len(lam), F)]


def residuals_vanish(lam: Sequence[ToralScalar], F: Field | None = None) -> bool:
    return all(r.is_zero() for _, _, r in determinant_residuals(lam, F))


# closed forms of the determinants (independent of the engine)
def lambda1_closed_form(lam: Sequence[Scalar], i: int) -> Scalar:
    """[l_i;0][l_{i+1};0]([l_i l_{i+1};0] + q^-1 (l_i l_{i+1})^-1)."""
    a, b = lam[i - 1], lam[i]
    F = a.field
    ab = a * b
    return bracket(a, 0) * bracket(b, 0) * (bracket(ab, 0) + F.qpow(-1) * ab.inverse())


def lambda2_closed_form(lam: Sequence[Scalar], i: int, j: int, k: int, l: int) -> Scalar:
    """q l_ij l_kl [l_ij;0][l_kl;0] with l_ab = lambda_a ... lambda_{b-1}."""

    def prod_(a, b):
        x = lam[0].field.one
        for t in range(a, b):
            x = x * lam[t - 1]
        return x

    lij, lkl = prod_(i, j), prod_(k, l)
    return lam[0].field.q * lij * lkl * bracket(lij, 0) * bracket(lkl, 0)


def c_square_closed_form(c: Scalar) -> Scalar:
    """[c;0]^2([c;0]^2 - 1)."""
    b = bracket(c, 0)
    return b * b * (b * b - 1)


# ------------------------------------------------------ family predicate
@dataclass(frozen=True)
class HighestWeightVerdict:
    ok: bool
    tags: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def is_cp_highest_weight(lam: Sequence[ToralScalar]) -> HighestWeightVerdict:
    """Membership in the completely pointed highest weight families.

    Families: every entry +-1; one entry +-q (q-slot-i); lambda_1 arbitrary; lambda_n
    arbitrary; lambda_i lambda_{i+1} = +-q^-1 for one i.  Unlisted entries are +-1.
    """
    lam = tuple(lam)
    n = len(lam)
    if n == 0:
        raise ClassifyError("empty highest weight")
    off = [k for k, x in enumerate(lam) if not x.is_pm_one()]
    tags = []
    if not off:
        tags.append("all-pm-one")
    if len(off) == 1 and lam[off[0]].q_exponent() == 1:
        tags.append(f"q-slot-{off[0] + 1}")
    if all(k == 0 for k in off):
        tags.append("c-first")
    if all(k == n - 1 for k in off):
        tags.append("c-last")
    p = lam[0].p
    qinv = ToralScalar.qpow(-1, p)
    for i in range(n - 1):
        if all(k in (i, i + 1) for k in off) and (lam[i] * lam[i + 1]) in (qinv, -qinv):
            tags.append("adjacent-pair")
            break
    return HighestWeightVerdict(bool(tags), tuple(tags))


def grid_values(p: int = 1, max_a: int = 3) -> list[ToralScalar]:
    """{+-q^a c^b : |a| <= max_a, b in {0, 1}} with c the first parameter."""
    out = []
    for b in ((0, 1) if p else (0,)):
        for a in range(-max_a, max_a + 1):
            for sign in (1, -1):
                d = tuple([2 * b] + [0] * (p - 1)) if p else ()
                out.append(ToralScalar(sign, 2 * a, d))
    return out


def classification_sweep(n: int, max_a: int = 3) -> list[tuple]:
    """Disagreements between the family predicate and the determinant residuals on the grid."""
    F = field("c1")
    vals = grid_values(1, max_a)
    polys = residual_polynomials(n, F)
    bad = []
    pow_cache: dict = {}

    def mono(mu, k):
        key = (mu, k)
        v = pow_cache.get(key)
        if v is None:
            m = ToralScalar.one(1)
            for x, e in zip(mu, k):
                if e:
                    m = m * x**e
            v = pow_cache[key] = m.to_scalar(F)
        return v

    for lam in product(vals, repeat=n):
        mu = gl_lift(lam)
        vanish = True
        for _, _, poly in polys:
            total = F.zero
            for k, c in poly.items():
                total = total + c * mono(mu, k)
            if not total.is_zero():
                vanish = False
                break
        pred = is_cp_highest_weight(lam).ok
        if pred != vanish:
            bad.append((lam, pred, vanish))
        if len(pow_cache) > 200000:
            pow_cache.clear()
    return bad


# ------------------------------------------------------ root partition
@dataclass(frozen=True)
class RootPartition:
    n: int
    N_s: frozenset
    N_a: frozenset
    T_s: frozenset
    T_a: frozenset
    inconclusive: frozenset = frozenset()

    @property
    def N(self) -> frozenset:
        return self.N_s | self.N_a

    @property
    def T(self) -> frozenset:
        return self.T_s | self.T_a

    def covers(self) -> bool:
        """N and T are disjoint and their union is every root."""
        return not (self.N & self.T) and (self.N | self.T) == frozenset(all_roots(self.n)) and not self.inconclusive

    def closure_failures(self) -> list[tuple[str, Root, Root]]:
        out = []
        for name, S in (("N", self.N), ("T", self.T)):
            for a in S:
                for b in S:
                    s = a.plus(b)
                    if s is not None and s not in S:
                        out.append((name, a, b))
        return sorted(out)

    def is_closed(self) -> bool:
        return not self.closure_failures()

    def to_json(self) -> dict:
        def fmt(s):
            return sorted(str(r) for r in s)

        return {"N_s": fmt(self.N_s), "N_a": fmt(self.N_a), "T_s": fmt(self.T_s), "T_a": fmt(self.T_a),
                "inconclusive": fmt(self.inconclusive)}


def _chain(w: WeightModuleWindow, letter: UqElement, g, bound: int) -> str:
    """'killed', 'escaped' or 'open' for the chain E^k v_g, k <= bound."""
    vec = {g: w.field.one}
    for _ in range(bound):
        res = w.act(letter, vec)
        if isinstance(res, LeavesWindow):
            return "escaped"
        if not res:
            return "killed"
        vec = res
    return "open"


def partition_roots(w: WeightModuleWindow, bound: int | None = None, points: Iterable | None = None) -> RootPartition:
    """Classify each root as locally nilpotent (N) or torsion-free (T) from chains in the window.

    A chain reaching zero proves nilpotence (an injective root vector never kills a vector).
    A root with no killed chain and at least one chain of nonzero steps is reported torsion-free.
    """
    n = w.n
    alg = w.alg
    bound = bound if bound is not None else 2 * w.radius + 1
    pts = list(points) if points is not None else w.points()
    N, T, unk = set(), set(), set()
    for r in all_roots(n):
        letter = alg.letter(r)
        states = {_chain(w, letter, g, bound) for g in pts}
        if "killed" in states:
            N.add(r)
        elif states & {"escaped", "open"}:
            T.add(r)
        else:
            unk.add(r)
    N_s = frozenset(r for r in N if -r in N)
    T_s = frozenset(r for r in T if -r in T)
    return RootPartition(n, N_s, frozenset(N) - N_s, T_s, frozenset(T) - T_s, frozenset(unk))


def invariant_targets(p: RootPartition) -> tuple[tuple[Root, ...], frozenset]:
    """The adapted base and the roots N_a + (B-positive part of N_s)."""
    base = find_adapted_base(p.N_a, p.N_s, p.T_s, n=p.n)
    pos = positive_system(base, p.n)
    return base, frozenset(p.N_a | (p.N_s & pos))


def find_invariant_vector(w: WeightModuleWindow, p: RootPartition, start=None, sweeps: int = 20):
    """A basis point v+ killed by every E_beta, beta in N_a and the positive part of N_s.

    Iterates maximal nonvanishing powers of the simple N-roots of the adapted base,
    then verifies all targets.
    """
    if not p.N:
        raise NoNilpotentRoots("no locally nilpotent roots: every weight vector is a candidate")
    base, targets = invariant_targets(p)
    simple = [b for b in base if b in p.N]
    alg = w.alg
    pts = w.points()
    g = start if start is not None else (w.interior(1) or pts)[len(w.interior(1) or pts) // 2]
    order = sorted(targets, key=lambda r: (r.height, r))
    for _ in range(sweeps):
        moved = False
        for r in simple + order:
            letter = alg.letter(r)
            while True:
                res = w.act(letter, g)
                if isinstance(res, LeavesWindow):
                    raise WindowExhausted(f"E_{r} chain from {g} leaves the window")
                if not res:
                    break
                if len(res) != 1:
                    raise ProportionalityError("root vector image is not a single basis vector")
                (g,) = res
                moved = True
        if not moved:
            break
    for r in targets:
        res = w.act(alg.letter(r), g)
        if isinstance(res, LeavesWindow) or res:
            raise WindowExhausted(f"could not reach a vector killed by E_{r}")
    return g


# ------------------------------------------------------------- mu solver
@dataclass(frozen=True)
class MuSolution:
    mu: tuple[ToralScalar, ...]
    tag: str

    def literal(self) -> list[str]:
        return [str(m) for m in self.mu]


def _toral_pairs_from_sum(Z: Scalar, p: int) -> list[ToralScalar]:
    """All toral T with T + T^-1 = Z."""
    terms = Z.laurent_terms()
    if terms is None:
        raise RequiresQuadraticExtension(f"{Z} is not a Laurent polynomial")
    if len(terms) == 1:
        ((e, c),) = terms.items()
        if any(e) or c not in (2, -2):
            raise RequiresQuadraticExtension(f"T + 1/T = {Z} has no toral root")
        return [ToralScalar(1 if c == 2 else -1, 0, (0,) * p)]
    if len(terms) == 2:
        (e1, c1), (e2, c2) = sorted(terms.items())
        if c1 == c2 and c1 in (1, -1) and all(a == -b for a, b in zip(e1, e2)):
            s = int(c1)
            t = ToralScalar(s, e1[0], tuple(e1[1:]))
            return sorted({t, t.inverse()})
    raise RequiresQuadraticExtension(f"T + 1/T = {render_scalar(Z)} has no toral root")


def _to_toral(x: Scalar) -> ToralScalar:
    try:
        return ToralScalar.from_scalar(x)
    except NotToral:
        raise RequiresQuadraticExtension(f"weight ratio {x} is not of the form +-q^a c^b") from None


def measure_z(w: WeightModuleWindow, g) -> dict:
    """z_ij with E_{e_j-e_i} E_{e_i-e_j} v = z_ij v, for i < j."""
    alg = w.alg
    out = {}
    for i, j in combinations(range(1, w.n + 2), 2):
        out[(i, j)] = _eigen(w, E_root(alg, j, i) * E_root(alg, i, j), g)
    return out


def solve_mu(w: WeightModuleWindow, g) -> list[MuSolution]:
    """All toral mu with z_ij = [mu_i;1][mu_j;0] and mu_i/mu_j = lambda_ij at v_g.

    Writes mu = s a with a_i = lambda_{i,n+1}; each pair gives T + 1/T = Z_ij for
    T = q s^2 a_i a_j, and the candidate s^2 values are intersected across pairs.
    """
    F = w.field
    q = F.q
    n = w.n
    wt = w.weight(g)
    a_s = [wt[i] / wt[n] for i in range(n + 1)]
    a = [_to_toral(x) for x in a_s]
    p = a[0].p
    z = measure_z(w, g)
    qq2 = (q - q.inverse()) ** 2
    candidates = None
    for (i, j), zij in sorted(z.items()):
        Z = zij * qq2 + q * a_s[i - 1] / a_s[j - 1] + q.inverse() * a_s[j - 1] / a_s[i - 1]
        Ts = _toral_pairs_from_sum(Z, p)
        A = a[i - 1] * a[j - 1]
        S = {T / (ToralScalar.qpow(1, p) * A) for T in Ts}
        candidates = S if candidates is None else candidates & S
        if not candidates:
            raise InconsistentModuleData(f"no common solution after pair ({i},{j})")
    sols = []
    square_fail = False
    for S in sorted(candidates):
        try:
            s = toral_sqrt(S)
        except NotToralSquare:
            square_fail = True
            continue
        for sign in (1, -1):
            mu = tuple((s * sign) * x for x in a)
            sols.append(mu)
    if not sols:
        if square_fail:
            raise RequiresQuadraticExtension("s^2 is not a toral square")
        raise InconsistentModuleData("no solution")
    # verify exactly
    out = []
    own = _own_toral_weight(w, g)
    for mu in sols:
        mus = [m.to_scalar(F) for m in mu]
        for (i, j), zij in z.items():
            if bracket(mus[i - 1], 1) * bracket(mus[j - 1], 0) != zij:
                raise InconsistentModuleData(f"solution fails z_{i}{j}")
        out.append(MuSolution(mu, _mu_tag(mu, own)))
    return sorted(out, key=lambda s: (s.tag != "identity", s.mu))


def _own_toral_weight(w, g):
    try:
        return tuple(ToralScalar.from_scalar(x) for x in w.weight(g))
    except NotToral:
        return None


def _mu_tag(mu, own) -> str:
    if own is None:
        return "other"
    if mu == own:
        return "identity"
    if all(m == o or m == -o for m, o in zip(mu, own)):
        return "sign-flip"
    return "other"


def mu_matches(sol_mu: Sequence[ToralScalar], target: Sequence[ToralScalar], block: Iterable[int] = ()) -> bool:
    """Equality up to signs, after optionally replacing mu_i by q^-1 mu_i^-1 on a block of indices."""
    block = set(block)
    p = target[0].p
    qinv = ToralScalar.qpow(-1, p)
    for k, (m, t) in enumerate(zip(sol_mu, target)):
        if k + 1 in block:
            t = qinv * t.inverse()
        if m != t and m != -t:
            return False
    return True


# ---------------------------------------------------------- phi relations
def verify_phi_relations(w: WeightModuleWindow, g) -> list[CheckResult]:
    """Measure kappa, phi, z at v_g and check the torsion-free consistency equations exactly."""
    n = w.n
    if n < 2:
        raise ClassifyError("phi relations need n >= 2")
    F = w.field
    q = F.q
    qi = q.inverse()
    d = q - qi
    alg = w.alg
    wt = w.weight(g)
    N = n + 1

    def lam(a, b):
        return wt[a - 1] / wt[b - 1]

    kap: dict = {}

    def kappa(a, b, c):
        key = (a, b, c)
        if key not in kap:
            lhs = w.act(E_root(alg, a, b) * E_root(alg, b, c), g)
            rhs = w.act(E_root(alg, a, c), g)
            if isinstance(lhs, LeavesWindow) or isinstance(rhs, LeavesWindow):
                raise WindowTooSmall(f"kappa_{a}{b}{c} needs points outside the window")
            if not rhs:
                raise ClassifyError(f"E_({a},{c}) kills v: module is not torsion-free here")
            (h,) = rhs
            if set(lhs) - {h}:
                raise ProportionalityError(f"kappa_{a}{b}{c}: images not proportional")
            kap[key] = lhs.get(h, F.zero) / rhs[h]
        return kap[key]

    def phi(a, b, c):
        return q + d * kappa(a, b, c)

    z = measure_z(w, g)
    out = []

    def rec(name, idx, res):
        out.append(CheckResult(name, idx, "pass" if res.is_zero() else "fail",
                               "0" if res.is_zero() else render_scalar(res)))

    for i, j, k in combinations(range(1, N + 1), 3):
        f = phi(i, j, k)
        rec("phi-nonzero", (i, j, k), F.zero if not f.is_zero() else F.one)
        lij, ljk = lam(i, j), lam(j, k)
        z1 = f.inverse() * ((f - qi) / d) * ((lij.inverse() * f - q * lij) / d)
        z2 = -f.inverse() * ((f - q) / d) * ((qi * ljk.inverse() - f * ljk) / d)
        z3 = -f.inverse() * ((lij.inverse() * f - q * lij) / d) * ((qi * ljk.inverse() - f * ljk) / d)
        rec("z1", (i, j, k), z[(i, j)] - z1)
        rec("z2", (i, j, k), z[(j, k)] - z2)
        rec("z3", (i, j, k), z[(i, k)] - z3)
    for i, j, k, l in combinations(range(1, N + 1), 4):
        idx = (i, j, k, l)
        lij, ljk, lkl = lam(i, j), lam(j, k), lam(k, l)
        f_ijk, f_ijl, f_ikl, f_jkl = phi(i, j, k), phi(i, j, l), phi(i, k, l), phi(j, k, l)
        rec("phi1", idx, (f_jkl * f_ijl - lkl ** -2) * (ljk**2 * f_ijl - f_jkl))
        rec("phi2", idx, (f_ikl * f_ijk - lij**2) * (ljk**2 * f_ijk - f_ikl))
        rec("kappa1", idx, kappa(i, j, l) * (kappa(j, k, l) + 1) - kappa(i, j, k) * (kappa(i, k, l) + 1))
        rec("kappa1p", idx, kappa(j, i, l) * (kappa(i, k, l) + 1) - kappa(j, i, k) * (kappa(j, k, l) + 1))
        rec("kappa3", idx, qi * f_jkl * (f_ijk - f_ijl) + f_jkl - f_ikl)
        rec("kappa4", idx, kappa(j, k, l) * (kappa(j, i, k) + lij.inverse())
            - kappa(i, k, l) * (kappa(j, i, l) + lij.inverse()))
        rec("kappa5", idx, lij.inverse() * (kappa(j, k, l) - kappa(i, k, l)) - (kappa(j, i, k) - kappa(j, i, l)))
        rec("kappa6", idx, lij.inverse() * f_ijk * f_ijl * (f_jkl - f_ikl) - lij * (f_ijk - f_ijl))
        rec("main-ijl", idx, f_ijl - f_ijk)
        rec("main-ikl", idx, f_ikl - ljk**2 * f_ijk)
        rec("main-jkl", idx, f_jkl - ljk**2 * f_ijk)
    return out


# ---------------------------------------------------------- kernel checks
@dataclass(frozen=True)
class KernelReport:
    status: str  # pass | fail | inconclusive
    checked: int
    failures: tuple = ()
    skipped: int = 0


def lift_element(x: UqElement, alg) -> UqElement:
    """The same element inside an algebra over a larger parameter field."""
    if x.alg is alg:
        return x
    if x.alg.n != alg.n:
        raise ClassifyError("rank mismatch")
    return alg.element({m: alg.field.lift(c) for m, c in x.terms.items()})


def kernel_annihilates(x: UqElement, windows: Sequence[WeightModuleWindow], depth: int | None = None) -> KernelReport:
    """x in ker(pi) acts by zero on every interior vector of every window (word route)."""
    A = weyl_algebra(x.alg.n, x.alg.field)
    if not A.pi(x).is_zero():
        raise NotInKernel("pi(x) is nonzero")
    if depth is None:
        depth = max((_word_length(x.alg, f, e) for f, _, e in x.terms), default=0)
    checked = 0
    skipped = 0
    fails = []
    for k, w in enumerate(windows):
        xw = lift_element(x, w.alg)
        for g in w.interior(depth):
            res = w.act(xw, g, route="words")
            if isinstance(res, LeavesWindow):
                skipped += 1
                continue
            checked += 1
            if res:
                fails.append((k, g))
    status = "fail" if fails else ("pass" if checked or not windows else "inconclusive")
    return KernelReport(status, checked, tuple(fails), skipped)


def _word_length(alg, f, e) -> int:
    """Number of simple generators in the letters of one PBW monomial."""
    return sum(m * alg.roots[p].height for p, m in enumerate(f)) + sum(m * alg.roots[p].height for p, m in enumerate(e))


def kernel_elements(n: int = 2, F: Field | None = None) -> list[tuple[str, UqElement]]:
    """Nonzero elements of ker(pi), each built from a different mechanism."""
    F = F or field()
    alg = uq_algebra(n, F)
    A = weyl_algebra(n, F)
    from .uq.cyclic import cyclic_bracket_form

    q = F.q
    d = (q - q.inverse()).inverse()

    def br(j, m):
        # [Kb_j; m] in U_q
        return alg.Kb(j).scale(F.qpow(m) * d) - alg.Kb(j, -1).scale(F.qpow(-m) * d)

    out = []
    # degree 2: F_i E_i minus its bracket form
    for i in range(1, n + 1):
        out.append((f"FE-{i}", alg.F(i) * alg.E(i) - br(i, 1) * br(i + 1, 0)))
    # degree 2, weight nonzero: two preimages of x_1 y_3 (bracket recursion versus root letter)
    if n >= 2:
        u1 = A.step_preimage(1, 3)
        e13 = alg.letter(Root(1, 3))
        # pi(E_(1,3)) = -omega_2 x_1 y_3
        u2 = -(alg.Kb(2, -1) * e13)
        out.append(("E13-preimages", u1 - u2))
    # degree 4: F_1 F_2 E_2 E_1 minus the torus element with the same pi-image
    if n >= 2:
        x = alg.F(1) * alg.F(2) * alg.E(2) * alg.E(1)
        torus = cyclic_bracket_form(x)
        out.append(("FFEE-bracket", x - _torus_to_uq(alg, torus)))
    return [(name, u) for name, u in out if not u.is_zero()]


def _torus_to_uq(alg, t) -> UqElement:
    out = alg.zero()
    for (k, e), c in t.terms.items():
        if any(e):
            raise ClassifyError("not a torus element")
        out = out + alg.mono(k=k).scale(c)
    return out
