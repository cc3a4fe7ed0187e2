"""Reflection-pair analytics and representation-level verification.

Everything here is an exact cross-check: pair orders are decided both by
polynomial classification of the Cartan coefficient and by literal matrix
powers, characteristic polynomials are compared against the closed form,
the commutant is computed as a nullspace, and circuit traces against the
closed-form trace.  Disagreement between redundant routes raises, since it
can only mean an arithmetic bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from . import linalg
from .cartanpoly import DEFAULT_MAX_ORDER, OrderClass, classify_pair
from .construction import ReflectionRep
from .cyclotomic import FieldContext, FieldElement
from .graph import chord_circuit, precedes

Matrix = Sequence[Sequence[FieldElement]]


class OrderMismatch(ArithmeticError):
    """Polynomial classification and matrix powers disagree."""


class EquivalenceViolation(ArithmeticError):
    """The unipotency conditions failed to have consistent truth values."""


@dataclass(frozen=True, eq=False)
class ReflectionData:
    """A verified reflection: the matrix, a directing vector spanning the
    image of (M - I), and a basis of the fixed hyperplane."""

    ctx: FieldContext
    matrix: Matrix
    directing: tuple[FieldElement, ...]
    hyperplane: tuple[tuple[FieldElement, ...], ...]


def is_reflection(ctx: FieldContext, matrix: Matrix) -> Optional[ReflectionData]:
    """ReflectionData when the matrix squares to the identity and M - I has
    rank one; None otherwise."""
    n = len(matrix)
    if not linalg.is_identity(ctx, linalg.mat_mul(ctx, matrix, matrix)):
        return None
    shifted = [[matrix[i][j] - (ctx.one if i == j else ctx.zero)
                for j in range(n)] for i in range(n)]
    if linalg.rank(ctx, shifted) != 1:
        return None
    directing = None
    for j in range(n):
        col = [shifted[i][j] for i in range(n)]
        if any(not x.is_zero() for x in col):
            # canonical scaling: first nonzero coordinate 1, so generators of
            # a built representation report exactly their basis vector
            lead = next(x for x in col if not x.is_zero())
            inv = lead.invert()
            directing = tuple(x * inv for x in col)
            break
    hyperplane = tuple(tuple(vec) for vec in linalg.nullspace(ctx, shifted))
    return ReflectionData(ctx, linalg.mat_freeze(matrix), directing, hyperplane)


def rep_reflection(rep: ReflectionRep, s: int) -> ReflectionData:
    data = is_reflection(rep.ctx, rep.generators[s])
    if data is None:
        raise ArithmeticError(f"generator {s} is not a reflection")
    return data


def _directing_dependent(r: ReflectionData, s: ReflectionData) -> bool:
    rows = [list(r.directing), list(s.directing)]
    return linalg.rank(r.ctx, rows) < 2


def _coefficient_of(vec: Sequence[FieldElement], direction: Sequence[FieldElement],
                    ctx: FieldContext) -> FieldElement:
    """The scalar mu with vec = mu * direction; vec must be proportional."""
    pivot = next(i for i, x in enumerate(direction) if not x.is_zero())
    mu = vec[pivot] / direction[pivot]
    for a, b in zip(vec, direction):
        if a != mu * b:
            raise ArithmeticError("vector is not proportional to the direction")
    return mu


def pair_coefficients(r: ReflectionData, s: ReflectionData
                      ) -> Optional[tuple[FieldElement, FieldElement]]:
    """The two cross-coefficients (c(r,a;s,b), c(s,b;r,a)) when the
    directing vectors are independent, None when they are parallel."""
    if _directing_dependent(r, s):
        return None
    ctx = r.ctx
    rb = linalg.mat_vec(ctx, r.matrix, list(s.directing))
    diff = [x - y for x, y in zip(rb, s.directing)]
    c_rs = ctx.zero if all(x.is_zero() for x in diff) \
        else _coefficient_of(diff, r.directing, ctx)
    sa = linalg.mat_vec(ctx, s.matrix, list(r.directing))
    diff = [x - y for x, y in zip(sa, r.directing)]
    c_sr = ctx.zero if all(x.is_zero() for x in diff) \
        else _coefficient_of(diff, s.directing, ctx)
    return c_rs, c_sr


def cartan_coefficient(r: ReflectionData, s: ReflectionData) -> FieldElement:
    """Product of the two cross-coefficients; 4 for parallel directing
    vectors (the product is then unipotent)."""
    coeffs = pair_coefficients(r, s)
    if coeffs is None:
        return r.ctx.from_rational(4)
    return coeffs[0] * coeffs[1]


def _matrix_order_check(ctx: FieldContext, product: Matrix, n: int) -> bool:
    """Exact power check: product^n = I and product^d != I at proper divisors."""
    powers = {1: [list(row) for row in product]}
    acc = powers[1]
    for k in range(2, n + 1):
        acc = linalg.mat_mul(ctx, acc, product)
        powers[k] = acc
    if not linalg.is_identity(ctx, powers[n]):
        return False
    for d in range(1, n):
        if n % d == 0 and linalg.is_identity(ctx, powers[d]):
            return False
    return True


def _is_unipotent(ctx: FieldContext, product: Matrix) -> bool:
    n = len(product)
    shifted = [[product[i][j] - (ctx.one if i == j else ctx.zero)
                for j in range(n)] for i in range(n)]
    acc = shifted
    for _ in range(n - 1):
        acc = linalg.mat_mul(ctx, acc, shifted)
    return linalg.is_zero_matrix(acc) and not linalg.is_identity(ctx, product)


@dataclass(frozen=True, eq=False)
class ProductAnalysis:
    order_class: OrderClass
    char_poly: tuple[FieldElement, ...]
    closed_form_matches: Optional[bool]   # None when directing vectors are parallel
    coefficient: FieldElement


def product_analysis(r: ReflectionData, s: ReflectionData,
                     max_order: int = DEFAULT_MAX_ORDER) -> ProductAnalysis:
    """Order class of the pair product, cross-validated by matrix powers,
    with its characteristic polynomial checked against the closed form
    (X-1)^(n-2) (X^2 - (C-2) X + 1)."""
    ctx = r.ctx
    n = len(r.matrix)
    coeffs = pair_coefficients(r, s)
    product = linalg.mat_mul(ctx, r.matrix, s.matrix)
    if coeffs is None:
        order_class = OrderClass.unipotent()
        coefficient = ctx.from_rational(4)
    else:
        order_class = classify_pair(coeffs[0], coeffs[1], max_order)
        coefficient = coeffs[0] * coeffs[1]
    # independent route: exact matrix powers
    if order_class.kind in ("commuting", "finite"):
        expected = order_class.finite_order
        if not _matrix_order_check(ctx, product, expected):
            raise OrderMismatch(
                f"classified order {expected} but matrix powers disagree")
    elif order_class.kind == "unipotent":
        if not _is_unipotent(ctx, product):
            raise OrderMismatch("classified unipotent but (rs - I)^n != 0")
    char = tuple(linalg.charpoly(ctx, product))
    matches: Optional[bool] = None
    if coeffs is not None:
        closed = _closed_form_char_poly(ctx, n, coefficient)
        matches = char == closed
        if not matches:
            raise OrderMismatch("characteristic polynomial differs from closed form")
    return ProductAnalysis(order_class, char, matches, coefficient)


def _closed_form_char_poly(ctx: FieldContext, n: int,
                           coefficient: FieldElement) -> tuple[FieldElement, ...]:
    # (X - 1)^(n-2) * (X^2 - (C - 2) X + 1), coefficients lowest first
    quad = [ctx.one, 2 - coefficient, ctx.one]
    acc = quad
    for _ in range(n - 2):
        nxt = [ctx.zero] * (len(acc) + 1)
        for i, v in enumerate(acc):
            nxt[i] = nxt[i] - v
            nxt[i + 1] = nxt[i + 1] + v
        acc = nxt
    return tuple(acc)


@dataclass(frozen=True)
class UnipotentReport:
    """Truth values of the four unipotency conditions for a reflection pair."""

    unipotent: bool                 # (rs - I)^n = 0, rs != I
    coefficient_is_four: bool
    plane_meets_both_hyperplanes: bool
    hyperplanes_equal: bool
    directing_independent: bool

    def as_dict(self) -> dict:
        return {
            "unipotent": self.unipotent,
            "coefficient_is_four": self.coefficient_is_four,
            "plane_meets_both_hyperplanes": self.plane_meets_both_hyperplanes,
            "hyperplanes_equal": self.hyperplanes_equal,
            "directing_independent": self.directing_independent,
        }


def unipotent_equivalences(r: ReflectionData, s: ReflectionData) -> UnipotentReport:
    """Evaluate the four unipotency conditions exactly and enforce the
    expected equivalence pattern (all four for independent directing
    vectors; the two hyperplane conditions drop in the parallel case)."""
    ctx = r.ctx
    if linalg.mat_eq(r.matrix, s.matrix):
        raise ValueError("the two reflections must be distinct")
    n = len(r.matrix)
    product = linalg.mat_mul(ctx, r.matrix, s.matrix)
    cond1 = _is_unipotent(ctx, product)
    cond2 = cartan_coefficient(r, s) == 4
    independent = not _directing_dependent(r, s)
    # condition 3: a nonzero x = xa*a + xb*b with r(x) = x and s(x) = x;
    # nonzero coefficient pairs can still give x = 0 when the directing
    # vectors are parallel, so the combination itself is checked
    columns = [list(r.directing), list(s.directing)]
    rows = []
    for mat in (r.matrix, s.matrix):
        for i in range(n):
            row = []
            for vec in columns:
                img = sum((mat[i][j] * vec[j] for j in range(n)), ctx.zero)
                row.append(img - vec[i])
            rows.append(row)
    cond3 = False
    for xa, xb in linalg.nullspace(ctx, rows):
        x = [xa * a + xb * b for a, b in zip(columns[0], columns[1])]
        if any(not v.is_zero() for v in x):
            cond3 = True
            break
    # condition 4: equal fixed hyperplanes; rank-one (M - I) has a single
    # row direction cutting the hyperplane, so compare row spaces
    cond4 = _hyperplanes_equal(ctx, r, s)
    if cond1 != cond2:
        raise EquivalenceViolation("unipotency and coefficient-4 disagree")
    if independent and not (cond1 == cond3 == cond4):
        raise EquivalenceViolation(
            "conditions 1-4 must agree for independent directing vectors")
    if not independent and (cond3 or cond4):
        raise EquivalenceViolation(
            "parallel directing vectors force distinct hyperplanes")
    return UnipotentReport(cond1, cond2, cond3, cond4, independent)


def _hyperplanes_equal(ctx: FieldContext, r: ReflectionData,
                       s: ReflectionData) -> bool:
    n = len(r.matrix)

    def row_form(data: ReflectionData) -> list[FieldElement]:
        for i in range(n):
            row = [data.matrix[i][j] - (ctx.one if i == j else ctx.zero)
                   for j in range(n)]
            if any(not x.is_zero() for x in row):
                return row
        raise ArithmeticError("identity passed as reflection")

    return linalg.rank(ctx, [row_form(r), row_form(s)]) == 1


@dataclass(frozen=True)
class PairCheck:
    s: int
    t: int
    expected: int
    computed: Optional[int]     # None for infinite/indeterminate
    passed: bool

    def as_dict(self) -> dict:
        return {"pair": [self.s, self.t], "expected": self.expected,
                "computed": self.computed, "passed": self.passed}


@dataclass(frozen=True)
class GoodMorphismReport:
    checks: tuple[PairCheck, ...]
    passed: bool

    def as_dict(self) -> dict:
        return {"passed": self.passed,
                "checks": [c.as_dict() for c in self.checks]}


def verify_good_morphism(rep: ReflectionRep,
                         matrix: Sequence[Sequence[int]] | None = None,
                         max_order: int = DEFAULT_MAX_ORDER) -> GoodMorphismReport:
    """Per-pair table comparing expected orders m_st with computed orders.

    Failures are recorded, not raised: a report with failing rows is data
    about the input, not an internal error.
    """
    m = matrix if matrix is not None else rep.diagram.m
    ctx = rep.ctx
    n = rep.rank
    checks = []
    all_ok = True
    reflections = []
    for s in range(n):
        data = is_reflection(ctx, rep.generators[s])
        reflections.append(data)
    for s in range(n):
        for t in range(s, n):
            if s == t:
                ok = linalg.is_identity(
                    ctx, linalg.mat_mul(ctx, rep.generators[s], rep.generators[s]))
                checks.append(PairCheck(s, t, 1, 1 if ok else None, ok))
                all_ok &= ok
                continue
            expected = m[s][t]
            if reflections[s] is None or reflections[t] is None:
                checks.append(PairCheck(s, t, expected, None, False))
                all_ok = False
                continue
            try:
                analysis = product_analysis(reflections[s], reflections[t], max_order)
                computed = analysis.order_class.finite_order
            except OrderMismatch:
                computed = None
            ok = computed == expected
            checks.append(PairCheck(s, t, expected, computed, ok))
            all_ok &= ok
    return GoodMorphismReport(tuple(checks), all_ok)


def commutant_dimension(rep: ReflectionRep) -> int:
    """Dimension of {X : X zeta_s = zeta_s X for all s}, by exact nullspace."""
    space = linalg.intertwiner_space(rep.ctx, rep.generators, rep.generators)
    return len(space)


@dataclass(frozen=True, eq=False)
class CircuitTrace:
    word: tuple[int, ...]
    trace: FieldElement
    formula_trace: Optional[FieldElement]   # closed form; None with inner chords
    chordless: bool
    shortcut_word: Optional[tuple[int, ...]] = None   # inner-chord case only
    shortcut_trace: Optional[FieldElement] = None

    @property
    def matches(self) -> Optional[bool]:
        if self.formula_trace is None:
            return None
        return self.trace == self.formula_trace


def chordless_circuit_word(rep: ReflectionRep, chord: tuple[int, int]
                           ) -> tuple[int, ...]:
    """Circuit word of a chord with inner chords shortcut away.

    Repeatedly replaces the segment between two non-consecutive circuit
    vertices joined by a diagram edge with that edge; only chords can
    join non-consecutive vertices of a tree path, so the result is a
    cycle word whose only closing edge is the chord itself.  The trace of
    this word depends on the chord's closing scalar with degree one and
    an invertible coefficient, which is what makes it a separator.
    """
    diagram = rep.diagram
    path = list(chord_circuit(rep.tree, chord).path)
    changed = True
    while changed:
        changed = False
        for i in range(len(path)):
            for j in range(i + 2, len(path)):
                if i == 0 and j == len(path) - 1:
                    continue
                if diagram.is_edge(path[i], path[j]):
                    path = path[:i + 1] + path[j:]
                    changed = True
                    break
            if changed:
                break
    return tuple(path)


def circuit_trace(rep: ReflectionRep, chord: tuple[int, int]) -> CircuitTrace:
    """Trace of the ordered product of the circuit closed by a chord.

    For a circuit without inner chords the trace has the closed form

        n - 2m + sum(alpha over circuit edges)
          + (directed coefficient product around the cycle)

    where a tree edge contributes alpha when traversed away from the
    circuit entry and 1 when traversed toward it, and the chord
    contributes the closing scalar from the far endpoint back to the
    start.  When the entry is the starting endpoint this is the familiar
    (prod of all circuit-tree alphas) * l' term; the direction-aware
    product is what the exact expansion of the cyclic product of
    rank-one-perturbed involutions yields in general.  The closed form is
    asserted equal to the direct matrix product trace.  For circuits with
    inner chords only the direct trace is reported.
    """
    circuit = chord_circuit(rep.tree, chord)
    path = circuit.path
    diagram = rep.diagram
    ctx = rep.ctx
    word = tuple(path)
    direct = rep.word_trace(word)
    # inner chord: a diagram edge joining non-consecutive circuit vertices
    onpath = set(path)
    inner = False
    consecutive = {frozenset((path[i], path[i + 1])) for i in range(len(path) - 1)}
    consecutive.add(frozenset((path[0], path[-1])))
    for s in onpath:
        for t in onpath:
            if s < t and diagram.is_edge(s, t) and frozenset((s, t)) not in consecutive:
                inner = True
    if inner:
        shortcut = chordless_circuit_word(rep, chord)
        return CircuitTrace(word, direct, None, False,
                            shortcut, rep.word_trace(shortcut))
    m = len(path)
    params = rep.params
    alpha_sum = params.alpha(diagram, path[0], path[-1])
    directed_prod = ctx.one
    for i in range(m - 1):
        a = params.alpha(diagram, path[i], path[i + 1])
        alpha_sum = alpha_sum + a
        if precedes(rep.tree, path[i], path[i + 1]):
            directed_prod = directed_prod * a
    closing = params.chord_pair(diagram, path[-1], path[0])[0]
    formula = rep.rank - 2 * m + alpha_sum + directed_prod * closing
    if formula != direct:
        raise OrderMismatch("circuit trace disagrees with the closed form")
    return CircuitTrace(word, direct, formula, True)


@dataclass(frozen=True, eq=False)
class EquivalenceVerdict:
    kind: str                   # "distinct" | "equivalent" | "inconclusive"
    word: Optional[tuple[int, ...]] = None
    traces: Optional[tuple[FieldElement, FieldElement]] = None
    intertwiner: Optional[list] = None

    def __str__(self) -> str:
        return self.kind


def character_word_family(rep: ReflectionRep) -> list[tuple[int, ...]]:
    """Pair words on the edges plus a circuit word per chord.

    Edge pair traces separate the per-edge coefficients; the trace of the
    chordless shortcut circuit of a chord is degree one in that chord's
    closing scalar with an invertible coefficient, so a change in any
    single parameter moves some trace in the family.
    """
    words: list[tuple[int, ...]] = [(s, t) for s, t in rep.diagram.edges]
    for chord in rep.tree.chords:
        words.append(chordless_circuit_word(rep, chord))
    return words


def characters_distinguish(rep1: ReflectionRep, rep2: ReflectionRep
                           ) -> EquivalenceVerdict:
    """Compare traces over the word family; equal traces fall back to an
    exact intertwiner solve."""
    if rep1.diagram != rep2.diagram:
        raise ValueError("representations live on different diagrams")
    for word in character_word_family(rep1):
        t1 = rep1.word_trace(word)
        t2 = rep2.word_trace(word)
        if t1 != t2:
            return EquivalenceVerdict("distinct", word, (t1, t2))
    space = linalg.intertwiner_space(rep1.ctx, rep1.generators, rep2.generators)
    for candidate in space:
        if not linalg.determinant(rep1.ctx, candidate).is_zero():
            return EquivalenceVerdict("equivalent", intertwiner=candidate)
    return EquivalenceVerdict("inconclusive")
