"""Invariant sesquilinear forms and the dual (contragredient) representation.

The space of forms invariant under a built representation, sesquilinear
with respect to a field automorphism, has dimension at most one.  Existence
is decided by a constructive criterion on the parameters (the automorphism
squares to the identity, fixes every edge coefficient, and balances every
chord around its circuit); the same dimension is recomputable as an exact
nullspace, which the test suite uses as an independent oracle.  When the
form exists its Gram matrix is assembled in closed form from tree products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .construction import ReflectionRep, cartan_matrix
from .cyclotomic import FieldContext, FieldElement
from .graph import chord_circuit, precedes

Matrix = Sequence[Sequence[FieldElement]]


class NoInvariantForm(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Automorphism:
    """Galois automorphism of the ambient real cyclotomic field."""

    ctx: FieldContext
    index: int          # canonical: min(j mod N, N - j mod N)

    @classmethod
    def identity(cls, ctx: FieldContext) -> "Automorphism":
        return cls(ctx, 1)

    @classmethod
    def from_index(cls, ctx: FieldContext, j: int) -> "Automorphism":
        return cls(ctx, ctx.galois_index(j))

    def __call__(self, x: FieldElement) -> FieldElement:
        return self.ctx.galois(self.index, x)

    def apply_matrix(self, m: Matrix) -> list[list[FieldElement]]:
        return [[self(x) for x in row] for row in m]

    @property
    def is_identity(self) -> bool:
        return self.index == 1

    def squared(self) -> "Automorphism":
        return Automorphism(self.ctx, self.ctx.galois_index(self.index * self.index))

    def is_involution(self) -> bool:
        return self.squared().is_identity

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.ctx is other.ctx and self.index == other.index

    def __repr__(self) -> str:
        return f"Automorphism(j={self.index}, N={self.ctx.N})"


def involutive_automorphisms(ctx: FieldContext) -> list[Automorphism]:
    """All Galois automorphisms with square the identity, identity first."""
    import math

    out = []
    seen = set()
    for j in range(1, ctx.N + 1):
        if math.gcd(j, ctx.N) != 1:
            continue
        canon = ctx.galois_index(j)
        if canon in seen:
            continue
        seen.add(canon)
        candidate = Automorphism(ctx, canon)
        if candidate.is_involution():
            out.append(candidate)
    out.sort(key=lambda a: a.index)
    return out


def tree_product(rep: ReflectionRep, s: int) -> FieldElement:
    """Product of the edge coefficients along the tree path from the root
    to s; the empty product (s = root) is 1."""
    ctx = rep.ctx
    acc = ctx.one
    path = rep.tree.path_to_root(s)      # [s, ..., root]
    for i in range(len(path) - 1):
        acc = acc * rep.params.alpha(rep.diagram, path[i], path[i + 1])
    return acc


@dataclass(frozen=True)
class FormExistence:
    exists: bool
    obstruction: Optional[str] = None        # "not_involution" | "moves_alpha" | "chord_balance"
    detail: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.exists


def form_exists(rep: ReflectionRep, theta: Automorphism) -> FormExistence:
    """Constructive criterion for a nonzero invariant theta-sesquilinear form.

    Checks, in order: theta is an involution; theta fixes every chosen edge
    coefficient; and for every chord, the two scalars balance against the
    prefix/suffix coefficient products around the circuit entry.
    """
    diagram = rep.diagram
    params = rep.params
    if not theta.is_involution():
        return FormExistence(False, "not_involution", (theta.index,))
    for edge in diagram.edges:
        alpha = params.alpha(diagram, *edge)
        if theta(alpha) != alpha:
            return FormExistence(False, "moves_alpha", edge)
    for chord in rep.tree.chords:
        circuit = chord_circuit(rep.tree, chord)
        path = circuit.path
        forward, backward = params.chord_pair(diagram, path[0], path[-1])
        prefix = rep.ctx.one
        for i in range(circuit.entry_index):
            prefix = prefix * params.alpha(diagram, path[i], path[i + 1])
        suffix = rep.ctx.one
        for i in range(circuit.entry_index, len(path) - 1):
            suffix = suffix * params.alpha(diagram, path[i], path[i + 1])
        if theta(forward) * prefix != backward * suffix:
            return FormExistence(False, "chord_balance", chord)
    return FormExistence(True)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Gram matrix of the invariant form in the adapted basis, normalized
    so the root diagonal entry is 2."""

    entries: tuple[tuple[FieldElement, ...], ...]
    theta: Automorphism

    def is_zero(self) -> bool:
        return linalg.is_zero_matrix(self.entries)

    def diagonal(self) -> tuple[FieldElement, ...]:
        return tuple(self.entries[i][i] for i in range(len(self.entries)))


def build_form(rep: ReflectionRep, theta: Automorphism) -> GramMatrix:
    """Assemble the Gram matrix: diagonal twice the tree product, tree edges
    minus the deeper endpoint's tree product, chords from the chord scalars."""
    existence = form_exists(rep, theta)
    if not existence:
        raise NoInvariantForm(
            f"no invariant form: {existence.obstruction} at {existence.detail}")
    ctx = rep.ctx
    diagram = rep.diagram
    n = rep.rank
    products = [tree_product(rep, s) for s in range(n)]
    gram = [[ctx.zero] * n for _ in range(n)]
    for s in range(n):
        gram[s][s] = 2 * products[s]
    for s, t in diagram.edges:
        if rep.tree.is_tree_edge(s, t):
            low, high = (s, t) if precedes(rep.tree, s, t) else (t, s)
            gram[s][t] = -products[high]
            gram[t][s] = -products[high]
        else:
            forward, _ = rep.params.chord_pair(diagram, s, t)
            gram[s][t] = -theta(forward) * products[s]
            gram[t][s] = -forward * products[s]
    return GramMatrix(linalg.mat_freeze(gram), theta)


def verify_invariance(rep: ReflectionRep, gram: GramMatrix) -> bool:
    """Exact check: M^T G theta(M) = G for every generator, plus
    theta-hermitian symmetry theta(G)^T = G.  The zero matrix passes
    vacuously; callers should treat it as degenerate, not as a form."""
    ctx = rep.ctx
    g = [list(row) for row in gram.entries]
    theta = gram.theta
    hermitian = linalg.mat_eq(linalg.transpose(theta.apply_matrix(g)), g)
    if not hermitian:
        return False
    for mat in rep.generators:
        mt = linalg.transpose(mat)
        tm = theta.apply_matrix(mat)
        if not linalg.mat_eq(linalg.mat_mul(ctx, linalg.mat_mul(ctx, mt, g), tm), g):
            return False
    return True


def gram_cartan_relation(rep: ReflectionRep, gram: GramMatrix) -> bool:
    """Bilinear case factorization: G = diag(beta_ss / 2) * Cartan, exactly."""
    if not gram.theta.is_identity:
        raise ValueError("the factorization check applies to the bilinear case")
    data = cartan_matrix(rep)
    n = rep.rank
    half = [gram.entries[i][i] * Fraction(1, 2) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if gram.entries[i][j] != half[i] * data.entries[i][j]:
                return False
    return True


def form_space_dimension(rep: ReflectionRep, theta: Automorphism) -> int:
    """Dimension of the space of invariant theta-sesquilinear forms, by
    exact nullspace of the full invariance system (independent of the
    constructive criterion)."""
    ctx = rep.ctx
    n = rep.rank
    rows = []
    for mat in rep.generators:
        tm = theta.apply_matrix(mat)
        # unknowns G_{rs}; equation (a, b): sum_{r,s} M_ra G_rs thetaM_sb = G_ab
        cols_r = [[r for r in range(n) if not mat[r][a].is_zero()] for a in range(n)]
        cols_s = [[s for s in range(n) if not tm[s][b].is_zero()] for b in range(n)]
        for a in range(n):
            for b in range(n):
                row = [ctx.zero] * (n * n)
                for r in cols_r[a]:
                    for s in cols_s[b]:
                        row[r * n + s] = row[r * n + s] + mat[r][a] * tm[s][b]
                row[a * n + b] = row[a * n + b] - ctx.one
                if any(not x.is_zero() for x in row):
                    rows.append(row)
    if not rows:
        return n * n
    return linalg.nullity(ctx, rows)


# ---------------------------------------------------------------------------
# dual representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DualRep:
    """Action on the dual space, with the adapted basis when it exists.

    dual_generators act on dual-basis coordinates (transposes of the
    primal involutions).  adapted_rows are the images of the Cartan rows;
    scaled by the tree products they give the adapted basis, and when the
    discriminant is nonzero the generators rewritten in that basis are
    again a reflection representation.
    """

    primal: ReflectionRep
    dual_generators: tuple
    adapted_rows: tuple                 # A'_i, dual-basis coordinates
    scalings: tuple                     # tree products, one per vertex
    discriminant: FieldElement
    degenerate: bool
    adapted_generators: Optional[tuple]  # None when degenerate

    @property
    def ctx(self) -> FieldContext:
        return self.primal.ctx

    def adapted_rank(self) -> int:
        return linalg.rank(self.ctx, [list(r) for r in self.adapted_rows])


def dual_representation(rep: ReflectionRep) -> DualRep:
    """Contragredient action plus the adapted basis data.

    Generators are involutions, so inverse-transpose is plain transpose.
    The candidate adapted basis vectors are the Cartan rows scaled by tree
    products; they form a basis exactly when the discriminant is nonzero,
    and the degenerate case is flagged with the rank evidence instead.
    """
    ctx = rep.ctx
    n = rep.rank
    duals = tuple(linalg.mat_freeze(linalg.transpose(g)) for g in rep.generators)
    data = cartan_matrix(rep)
    rows = data.entries
    products = tuple(tree_product(rep, s) for s in range(n))
    degenerate = data.discriminant.is_zero()
    adapted = None
    if not degenerate:
        basis_cols = [[products[j] * rows[j][i] for j in range(n)] for i in range(n)]
        basis_inv = linalg.inverse(ctx, basis_cols)
        adapted = tuple(
            linalg.mat_freeze(
                linalg.mat_mul(ctx, linalg.mat_mul(ctx, basis_inv, d), basis_cols))
            for d in duals)
    return DualRep(rep, duals, tuple(tuple(r) for r in rows), products,
                   data.discriminant, degenerate, adapted)


def dual_chord_coefficients_match(dual: DualRep) -> bool:
    """Check the chord coefficients of the adapted dual action.

    For a chord (s, t), the generator t sends A_s to
    A_s + (prod(s) / prod(t)) * l * A_t where l is the scalar attached to
    the s->t direction (the one carried by the Cartan entry c_st): the
    dual action swaps a chord's two scalars, rescaled by the tree-product
    ratio.  True when every chord matches exactly.
    """
    rep = dual.primal
    if dual.degenerate:
        raise ValueError("no adapted basis in the degenerate case")
    diagram = rep.diagram
    for s, t in rep.tree.chords:
        forward, backward = rep.params.chord_pair(diagram, s, t)
        expected_ts = dual.scalings[s] * forward / dual.scalings[t]
        expected_st = dual.scalings[t] * backward / dual.scalings[s]
        gen_t = dual.adapted_generators[t]
        gen_s = dual.adapted_generators[s]
        if gen_t[t][s] != expected_ts or gen_s[s][t] != expected_st:
            return False
    return True
