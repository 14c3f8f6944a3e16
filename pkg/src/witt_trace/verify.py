"""Cross-module identity suites; the CI entry point behind ``witt-trace verify``.

Each ``criterion_*`` function runs one identity family on seeded random
inputs and returns a :class:`CriterionResult`.  All comparisons are exact.
Oracles (matrix powers, orbit enumeration, determinant expansion) are
computed on plain Python integers, independently of the code under test.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .endo import block_triangular, char_series, iterate_traces, tr_trace
from .hh0 import (
    GroupHom,
    GroupRing,
    augment,
    augment_matrix,
    compute_hh0,
    cyclic_group,
    dihedral_group,
    inner_automorphism,
    power_map,
    reidemeister_series,
    symmetric_group,
    trivial_group,
)
from .linalg import Matrix
from .poly import Poly
from .rings import QQ, ZZ, IntegersMod
from .series import from_ghost_sum, neg_log_derivative
from .tomdieck import (
    TomDieckVector,
    coordinate_change_polys,
    ghost_to_tomdieck,
    integer_valued_on_box,
    tomdieck_to_ghost,
    tomdieck_to_witt,
    witt_to_tomdieck,
)
from .witt import (
    TruncationSet,
    WittVector,
    derive_universal_polys,
    ghost,
    ghost_to_witt,
    witt_to_series,
)
from .zeta import GradedEndo, zeta_exp, zeta_from_lefschetz, zeta_rational

DEFAULT_SEED = 20240601
ORDER = 12


@dataclass
class CriterionResult:
    number: str
    title: str
    passed: bool
    checked: int = 0
    details: list = field(default_factory=list)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.checked} checks)"


# -- plain-integer oracles -------------------------------------------------------

def int_matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def int_power_traces(a, N):
    out, p = [], a
    for _ in range(N):
        out.append(sum(p[i][i] for i in range(len(p))))
        p = int_matmul(p, a)
    return out


def random_int_matrix(rng, max_size=5, bound=4, size=None):
    k = size or rng.randint(1, max_size)
    return [[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)]


def random_witt(rng, ring, trunc, bound=5):
    if isinstance(ring, IntegersMod):
        return WittVector(ring, trunc, [rng.randrange(ring.modulus) for _ in trunc])
    return WittVector(ring, trunc, [rng.randint(-bound, bound) for _ in trunc])


def brute_force_orbit_count(group, phi):
    """Count classes of ``g ~ phi(k) g k^-1`` by closing each element's orbit."""
    n = group.order
    seen = set()
    count = 0
    for g in range(n):
        if g in seen:
            continue
        count += 1
        frontier = [g]
        seen.add(g)
        while frontier:
            x = frontier.pop()
            for k in range(n):
                y = group.table[group.table[phi(k)][x]][group.inverses[k]]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return count


# -- criteria --------------------------------------------------------------------

def criterion_1(seed=DEFAULT_SEED, pairs=500):
    """Ghost map is a ring homomorphism over ZZ and Z/6."""
    rng = random.Random(seed + 1)
    trunc = TruncationSet.interval(ORDER)
    res = CriterionResult("1", "ghost(a+b)=ghost(a)+ghost(b), ghost(ab)=ghost(a)ghost(b) over ZZ and Z/6", True)
    for ring in (ZZ, IntegersMod(6)):
        for _ in range(pairs):
            a, b = random_witt(rng, ring, trunc), random_witt(rng, ring, trunc)
            ga, gb = ghost(a), ghost(b)
            res.checked += 2
            if ghost(a + b) != ga + gb:
                res.passed = False
                res.details.append(f"sum fails over {ring}: {a} {b}")
            if ghost(a * b) != ga * gb:
                res.passed = False
                res.details.append(f"product fails over {ring}: {a} {b}")
    return res


def criterion_2(seed=DEFAULT_SEED):
    """Universal polynomials are integral; low-degree ones match hand derivations."""
    res = CriterionResult("2", "universal Witt polynomials up to n=12 are integral; S1, S2, P2 by hand", True)
    U = derive_universal_polys(ORDER)
    L = ORDER
    x = lambda d: Poly.variable(2 * L, d - 1)  # noqa: E731
    y = lambda d: Poly.variable(2 * L, L + d - 1)  # noqa: E731
    for n in range(1, ORDER + 1):
        for p in (U.sum_polys[n], U.prod_polys[n], U.neg_polys[n]):
            res.checked += 1
            if not p.has_integer_coefficients():
                res.passed = False
                res.details.append(f"non-integral polynomial at n={n}")
    expected = {
        "S1": (U.sum_polys[1], x(1) + y(1)),
        "S2": (U.sum_polys[2], x(2) + y(2) - x(1) * y(1)),
        "P1": (U.prod_polys[1], x(1) * y(1)),
        "P2": (U.prod_polys[2], x(1) ** 2 * y(2) + x(2) * y(1) ** 2 + x(2) * y(2) * 2),
    }
    for name, (got, want) in expected.items():
        res.checked += 1
        if got != want:
            res.passed = False
            res.details.append(f"{name} = {got.to_str(U.variable_names())}")
    return res


def _tr_char_samples(seed, count):
    rng = random.Random(seed)
    return [random_int_matrix(rng) for _ in range(count)]


def criterion_3(seed=DEFAULT_SEED, count=500):
    """ghost(tr_trace(f)) = traces of iterates; -t dlog det(1 - tf) = sum tr(f^n) t^n."""
    res = CriterionResult("3", "ghost(tr_trace(f,12)) = (tr f^n) and -t dlog chi_f = sum tr(f^n) t^n", True)
    for a in _tr_char_samples(seed + 3, count):
        f = Matrix(ZZ, a)
        want = [ZZ(v) for v in int_power_traces(a, ORDER)]
        w = ghost(tr_trace(f, ORDER))
        res.checked += 2
        if list(w.values()) != want:
            res.passed = False
            res.details.append(f"ghost mismatch for {a}")
        if neg_log_derivative(char_series(f, ORDER)) != from_ghost_sum(want, ZZ, ORDER):
            res.passed = False
            res.details.append(f"log-derivative mismatch for {a}")
    return res


def criterion_4(seed=DEFAULT_SEED, count=200):
    """Block-triangular matrices: char series multiply, TR-traces add; zero maps trace to zero."""
    rng = random.Random(seed + 4)
    res = CriterionResult("4", "char_series(block-triangular) = product; tr_trace additive; tr_trace(0)=0", True)
    for _ in range(count):
        a = random_int_matrix(rng, 3)
        b = random_int_matrix(rng, 3)
        c = [[rng.randint(-4, 4) for _ in range(len(b))] for _ in range(len(a))]
        f, g = Matrix(ZZ, a), Matrix(ZZ, b)
        h = block_triangular(f, Matrix(ZZ, c), g)
        res.checked += 2
        if char_series(h, ORDER) != char_series(f, ORDER) * char_series(g, ORDER):
            res.passed = False
            res.details.append(f"char series not multiplicative: {a} {b} {c}")
        if tr_trace(h, ORDER) != tr_trace(f, ORDER) + tr_trace(g, ORDER):
            res.passed = False
            res.details.append(f"tr_trace not additive: {a} {b} {c}")
    for ring in (ZZ, QQ, IntegersMod(6)):
        for k in range(1, 6):
            res.checked += 1
            if tr_trace(Matrix.zeros(ring, k), ORDER) != WittVector.zero(ring, TruncationSet.interval(ORDER)):
                res.passed = False
                res.details.append(f"tr_trace of the {k}x{k} zero matrix over {ring} is nonzero")
    return res


def criterion_5(seed=DEFAULT_SEED, count=500):
    """The TR-trace series of a k x k matrix is a polynomial of degree <= k."""
    res = CriterionResult("5", "every tr_trace series is a polynomial of degree <= matrix size", True)
    for a in _tr_char_samples(seed + 3, count):
        s = witt_to_series(tr_trace(Matrix(ZZ, a), ORDER))
        res.checked += 1
        if s.degree() > len(a):
            res.passed = False
            res.details.append(f"degree {s.degree()} > {len(a)} for {a}")
    return res


def random_graded(rng, max_degrees=3, max_size=3, bound=3):
    blocks = []
    for _ in range(rng.randint(1, max_degrees)):
        k = rng.randint(0, max_size)
        blocks.append([[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)])
    return GradedEndo.from_ints(blocks, ZZ)


def criterion_6(seed=DEFAULT_SEED, count=200):
    """exp(sum L(g^n) t^n / n) equals the alternating product of characteristic polynomials."""
    rng = random.Random(seed + 6)
    res = CriterionResult("6", "zeta_exp * denominator = numerator mod t^13", True)
    for _ in range(count):
        g = random_graded(rng)
        num, den = zeta_rational(g, ORDER)
        res.checked += 1
        if zeta_exp(g, ORDER) * den != num:
            res.passed = False
            res.details.append(f"zeta mismatch for {[c.to_ints() for c in g.components]}")
    return res


def _pipeline_cases():
    """(name, group, twist) with identity and nontrivial twists."""
    cases = []
    triv = trivial_group()
    cases.append(("trivial", triv, GroupHom.identity(triv)))
    c2 = cyclic_group(2)
    cases += [("C2", c2, GroupHom.identity(c2)), ("C2/collapse", c2, GroupHom(c2, [0, 0]))]
    c3 = cyclic_group(3)
    cases += [("C3", c3, GroupHom.identity(c3)), ("C3/inverse", c3, power_map(c3, 2))]
    s3 = symmetric_group(3)
    transposition = s3.labels.index("213")
    sign = [0 if _is_even(s3.labels[g]) else transposition for g in range(s3.order)]
    cases += [
        ("S3", s3, GroupHom.identity(s3)),
        ("S3/inner(12)", s3, inner_automorphism(s3, transposition)),
        ("S3/sign", s3, GroupHom(s3, sign)),
    ]
    return cases


def _is_even(label):
    perm = [int(ch) - 1 for ch in label]
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return inversions % 2 == 0


def random_group_ring_matrix(rng, A, max_size=3, bound=2):
    k = rng.randint(1, max_size)
    return Matrix(A, [[A.element([rng.randint(-bound, bound) if rng.random() < 0.6 else 0
                                  for _ in range(A.rank)]) for _ in range(k)] for _ in range(k)])


def criterion_7(seed=DEFAULT_SEED, per_case=8):
    """Augmented Reidemeister traces are the Lefschetz numbers; trivial G reduces to iterate_traces."""
    rng = random.Random(seed + 7)
    res = CriterionResult("7", "augment(reidemeister_series) = Lefschetz numbers; zeta pipeline agrees", True)
    for name, G, phi in _pipeline_cases():
        A = GroupRing(G)
        for _ in range(per_case):
            f = random_group_ring_matrix(rng, A)
            series = reidemeister_series(f, phi, ORDER)
            aug = [augment(c) for c in series]
            eps = augment_matrix(f)
            want = int_power_traces(eps.to_ints(), ORDER)
            res.checked += 2
            if aug != want:
                res.passed = False
                res.details.append(f"{name}: augmentation {aug} != {want}")
            if zeta_from_lefschetz(aug, ORDER) != zeta_exp(GradedEndo((eps,)), ORDER):
                res.passed = False
                res.details.append(f"{name}: zeta pipeline mismatch")
            if G.order == 1:
                res.checked += 1
                if [c.free[0] for c in series] != [v.value for v in iterate_traces(eps, ORDER)]:
                    res.passed = False
                    res.details.append(f"{name}: series differs from iterate_traces")
    return res


def _all_twists(G):
    twists = [GroupHom.identity(G)]
    twists += [inner_automorphism(G, h) for h in range(G.order)]
    twists.append(GroupHom(G, [G.identity] * G.order))
    abelian = all(G.table[a][b] == G.table[b][a] for a in range(G.order) for b in range(G.order))
    if abelian:
        for k in range(2, G.order + 1):
            twists.append(power_map(G, k))
    return twists


def criterion_8(seed=DEFAULT_SEED):
    """Rank of HH_0(ZZ[G]) = number of (twisted) conjugacy classes."""
    res = CriterionResult("8", "HH0 ranks: C2,C3,S3,D4 -> 2,3,3,5; twisted ranks = twisted orbit counts", True)
    groups = {"C2": cyclic_group(2), "C3": cyclic_group(3), "S3": symmetric_group(3), "D4": dihedral_group(4)}
    for name, G in groups.items():
        A = GroupRing(G)
        oracle = brute_force_orbit_count(G, GroupHom.identity(G))
        H = compute_hh0(A)
        res.checked += 1
        if H.rank != oracle or H.torsion:
            res.passed = False
            res.details.append(f"{name}: rank {H.rank} torsion {H.torsion}, oracle {oracle}")
        res.details.append(f"{name}: untwisted rank {H.rank} (oracle {oracle})")
        for phi in _all_twists(G):
            Ht = compute_hh0(A, phi)
            want = brute_force_orbit_count(G, phi)
            res.checked += 1
            if Ht.rank != want or Ht.torsion:
                res.passed = False
                res.details.append(f"{name} twisted by {phi.images}: rank {Ht.rank}, oracle {want}")
    return res


# Published low-degree change-of-coordinate formulas, transcribed literally.
# The a3 entry as printed reads (b1^3 - b1^3)/3; the corrected form is used
# here and flagged in the report.
def _reference_polys():
    N = 4
    v = lambda i: Poly.variable(N, i - 1)  # noqa: E731
    b1, b2, b3, b4 = (v(i) for i in range(1, 5))
    a1, a2, a3 = b1, b2, b3  # same variables, named for the b-in-terms-of-a table
    h = Fraction(1, 2)
    return {
        "a1": (b1, "b"),
        "a2": (b2 - (b1 ** 2 - b1) * h, "b"),
        "a3 (corrected from (b1^3 - b1^3)/3)": (b3 - (b1 ** 3 - b1) * Fraction(1, 3), "b"),
        "a4": (b4 + (b2 * 2 - b2 ** 2 + b1 ** 2 * b2 * 2 - b1 * b2 * 2 - b1 ** 4 * Fraction(3, 2)
                     + b1 ** 3 - b1 ** 2 * h + b1) * Fraction(1, 4), "b"),
        "b1": (a1, "a"),
        "b2": (a2 + (a1 ** 2 - a1) * h, "a"),
        "b3": (a3 + (a1 ** 3 - a1) * Fraction(1, 3), "a"),
    }


def criterion_9_round_trips(seed=DEFAULT_SEED, count=1000):
    rng = random.Random(seed + 9)
    res = CriterionResult("9a", "tomdieck <-> witt <-> ghost round trips are identities", True)
    trunc = TruncationSet.interval(ORDER)
    for _ in range(count):
        b = TomDieckVector([rng.randint(-10, 10) for _ in range(ORDER)])
        a = WittVector(ZZ, trunc, [rng.randint(-10, 10) for _ in range(ORDER)])
        checks = [
            witt_to_tomdieck(tomdieck_to_witt(b)) == b,
            tomdieck_to_witt(witt_to_tomdieck(a)) == a,
            ghost_to_tomdieck(tomdieck_to_ghost(b)) == b,
            ghost_to_witt(ghost(a)) == a,
            ghost(tomdieck_to_witt(b)) == tomdieck_to_ghost(b),
        ]
        res.checked += len(checks)
        if not all(checks):
            res.passed = False
            res.details.append(f"round trip failed for b={b.coords} a={list(a.values())}")
    return res


def criterion_9_published(seed=DEFAULT_SEED, names=None):
    """Derived polynomials against the published table (``names`` selects entries)."""
    C = coordinate_change_polys(4)
    ref = _reference_polys()
    names = names or list(ref)
    res = CriterionResult("9", "derived coordinate-change polynomials match the published table", True)
    for name in names:
        want, system = ref[name]
        n = int(name[1])
        got = C.a_polys[n] if system == "b" else C.b_polys[n]
        var_names = C.b_names() if system == "b" else C.a_names()
        res.checked += 1
        if got != want:
            res.passed = False
            diff = (got - want).to_str(var_names)
            res.details.append(f"{name}: derived {got.to_str(var_names)}; published {want.to_str(var_names)}; "
                               f"derived - published = {diff}")
            ok, point = integer_valued_on_box(want, -3, 3)
            if not ok:
                args = [point.get(f"x{i + 1}", 0) for i in range(want.nvars)]
                res.details.append(f"{name}: the published polynomial is not integer-valued: "
                                   f"{want.evaluate(args)} at {var_names[:want.nvars]} = {args}")
        elif "corrected" in name:
            res.details.append(f"{name}: matches only after correcting the published typo")
    return res


def criterion_9_integrality(seed=DEFAULT_SEED):
    res = CriterionResult("9d", "derived polynomials are integer-valued on [-3,3]^N, N=12", True)
    C = coordinate_change_polys(ORDER)
    for n in range(1, ORDER + 1):
        for label, p in ((f"a{n}", C.a_polys[n]), (f"b{n}", C.b_polys[n])):
            ok, point = integer_valued_on_box(p, -3, 3)
            res.checked += 1
            if not ok:
                res.passed = False
                res.details.append(f"{label} is not integral at {point}")
    return res


def criterion_9(seed=DEFAULT_SEED):
    parts = [
        criterion_9_round_trips(seed),
        criterion_9_published(seed, ["a1", "a2", "b2", "b3", "a3 (corrected from (b1^3 - b1^3)/3)"]),
        criterion_9_published(seed, ["a4"]),
        criterion_9_integrality(seed),
    ]
    parts[1].number, parts[2].number = "9b", "9c"
    res = CriterionResult("9", "coordinate change: round trips, published polynomials, integrality",
                          all(p.passed for p in parts), sum(p.checked for p in parts))
    for p in parts:
        res.details.append(p.line())
        res.details.extend("  " + d for d in p.details)
    return res


def criterion_10(seed=DEFAULT_SEED, pairs=500):
    rng = random.Random(seed + 10)
    trunc = TruncationSet.interval(ORDER)
    res = CriterionResult("10", "witt_to_series(a+b) = product; -t dlog witt_to_series(a) = ghost(a)", True)
    for _ in range(pairs):
        a, b = random_witt(rng, ZZ, trunc), random_witt(rng, ZZ, trunc)
        sa, sb = witt_to_series(a), witt_to_series(b)
        res.checked += 2
        if witt_to_series(a + b) != sa * sb:
            res.passed = False
            res.details.append(f"not additive-to-multiplicative: {a} {b}")
        if neg_log_derivative(sa) != from_ghost_sum(list(ghost(a).values()), ZZ, ORDER):
            res.passed = False
            res.details.append(f"log-derivative != ghost for {a}")
    return res


def criterion_11(seed=DEFAULT_SEED, count=200):
    rng = random.Random(seed + 11)
    res = CriterionResult("11", "tr_trace commutes with reduction ZZ -> Z/m, m in {2,6,12}", True)
    for i in range(count):
        m = (2, 6, 12)[i % 3]
        a = random_int_matrix(rng)
        f = Matrix(ZZ, a)
        Zm = IntegersMod(m)
        reduced_first = tr_trace(f.map(lambda v: Zm(v.value), Zm), ORDER)
        traced_first = tr_trace(f, ORDER).change_ring(Zm)
        res.checked += 1
        if reduced_first != traced_first:
            res.passed = False
            res.details.append(f"m={m}: {a}")
    return res


CRITERIA = {
    "1": criterion_1,
    "2": criterion_2,
    "3": criterion_3,
    "4": criterion_4,
    "5": criterion_5,
    "6": criterion_6,
    "7": criterion_7,
    "8": criterion_8,
    "9": criterion_9,
    "10": criterion_10,
    "11": criterion_11,
}


def run_all(seed=DEFAULT_SEED, only=None, workers=1):
    """Run the selected criteria; independent suites may run in a thread pool."""
    keys = [k for k in CRITERIA if only is None or k in only]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda k: CRITERIA[k](seed), keys))
    return [CRITERIA[k](seed) for k in keys]
