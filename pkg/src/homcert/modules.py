"""Finitely presented modules given by presentation matrices.

A module with presentation matrix P (rank0 x rank1) is the cokernel of
P : R^rank1 -> R^rank0; elements are generator-coordinate columns taken
modulo the column span of P.  The side tag ("left"/"right") is pure
bookkeeping over the supported commutative rings, but it is tracked so
dualization typechecks: duals live on the opposite side.

Dualizing a module M means Hom(M, R): its elements are the row vectors
x with x P = 0, so generators of the dual are a generating set of the
left kernel of P, and relations among those are one further left
kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrices import (
    Mat,
    MatrixError,
    colspan_canonical,
    kernel_left,
    kernel_right,
    smith_invariants,
    solve_left,
    solve_right,
)
from .rings import RingDescriptor


def opposite(side: str) -> str:
    if side == "left":
        return "right"
    if side == "right":
        return "left"
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True)
class FPModule:
    ring: RingDescriptor
    side: str
    presentation: Mat

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError(f"bad side {self.side!r}")
        if self.presentation.ring != self.ring:
            raise MatrixError("presentation ring mismatch")

    @property
    def rank0(self) -> int:
        return self.presentation.rows

    @property
    def rank1(self) -> int:
        return self.presentation.cols

    @staticmethod
    def free(ring: RingDescriptor, side: str, rank: int) -> "FPModule":
        return FPModule(ring, side, Mat.zero(ring, rank, 0))

    @staticmethod
    def cyclic(ring: RingDescriptor, side: str, annihilator: int) -> "FPModule":
        """R / (a): e.g. cyclic(Z, 'left', 2) is Z/2 as a Z-module."""
        return FPModule(ring, side, Mat.from_rows(ring, [[annihilator]]))

    def is_free_presentation(self) -> bool:
        return self.rank1 == 0

    def is_zero(self) -> bool:
        if self.rank0 == 0:
            return True
        return solve_right(self.presentation, Mat.identity(self.ring, self.rank0)) is not None

    def contains_in_relations(self, columns: Mat) -> bool:
        """True when every column lies in the span of the relations."""
        return solve_right(self.presentation, columns) is not None

    def elements_equal(self, x: Mat, y: Mat) -> bool:
        return self.contains_in_relations(x - y)

    def abelian_invariants(self) -> tuple[int, tuple[int, ...]]:
        """(free rank, torsion invariant factors) of the underlying group.

        A complete isomorphism invariant over all three supported rings:
        over Z/n and F_p the module structure is determined by the
        underlying abelian group together with the ring.
        """
        n = self.ring.modulus
        P = self.presentation
        if n is None:
            lifted = P
        else:
            scaled = Mat(RingDescriptor("Z"), P.rows, P.cols, P.entries)
            block = Mat.identity(RingDescriptor("Z"), P.rows).scale(n)
            lifted = scaled.hstack(block)
        if n is not None:
            diag = smith_invariants(lifted)
        else:
            diag = smith_invariants(Mat(RingDescriptor("Z"), P.rows, P.cols, P.entries))
        free_rank = self.rank0 - len(diag)
        torsion = tuple(sorted(d for d in diag if d != 1))
        return free_rank, torsion

    def __str__(self) -> str:
        free_rank, torsion = self.abelian_invariants()
        parts = ["R"] * free_rank + [f"R/{d}" for d in torsion]
        body = " + ".join(parts) if parts else "0"
        return f"<{self.side} {self.ring}-module {body}>"


def modules_isomorphic(m1: FPModule, m2: FPModule) -> bool:
    if m1.ring != m2.ring or m1.side != m2.side:
        return False
    return m1.abelian_invariants() == m2.abelian_invariants()


@dataclass(frozen=True)
class ModuleMap:
    source: FPModule
    target: FPModule
    matrix: Mat  # target.rank0 x source.rank0, acting on generator columns

    def __post_init__(self):
        if self.matrix.rows != self.target.rank0 or self.matrix.cols != self.source.rank0:
            raise MatrixError(
                f"map matrix is {self.matrix.rows}x{self.matrix.cols}, expected "
                f"{self.target.rank0}x{self.source.rank0}"
            )
        if self.source.ring != self.target.ring:
            raise MatrixError("module map across different rings")

    @property
    def ring(self) -> RingDescriptor:
        return self.source.ring

    def is_well_defined(self) -> bool:
        image_of_relations = self.matrix @ self.source.presentation
        return self.target.contains_in_relations(image_of_relations)

    def is_zero_map(self) -> bool:
        return self.target.contains_in_relations(self.matrix)

    def equals(self, other: "ModuleMap") -> bool:
        return self.target.contains_in_relations(self.matrix - other.matrix)

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        if first.target.rank0 != self.source.rank0:
            raise MatrixError("composition shape mismatch")
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix)

    @staticmethod
    def identity(m: FPModule) -> "ModuleMap":
        return ModuleMap(m, m, Mat.identity(m.ring, m.rank0))

    def is_injective(self) -> bool:
        W = kernel_right(self.matrix.hstack(self.target.presentation))
        head = W.submatrix(range(self.source.rank0), range(W.cols))
        return self.source.contains_in_relations(head)

    def is_surjective(self) -> bool:
        stacked = self.matrix.hstack(self.target.presentation)
        return solve_right(stacked, Mat.identity(self.ring, self.target.rank0)) is not None

    def is_isomorphism(self) -> bool:
        return self.is_well_defined() and self.is_surjective() and self.is_injective()

    def kernel_generators(self) -> Mat:
        """Columns (in source generator coordinates) generating the kernel."""
        W = kernel_right(self.matrix.hstack(self.target.presentation))
        head = W.submatrix(range(self.source.rank0), range(W.cols))
        return colspan_canonical(head)


def subquotient_module(ring: RingDescriptor, side: str, gens: Mat, zeros: Mat) -> FPModule:
    """(span(gens) + span(zeros)) / span(zeros) inside an ambient free module.

    gens and zeros are column matrices with a common row count; the
    result is presented on the columns of gens.
    """
    if gens.rows != zeros.rows:
        raise MatrixError("ambient rank mismatch in subquotient")
    k = gens.cols
    W = kernel_right(gens.hstack(zeros))
    rel = W.submatrix(range(k), range(W.cols))
    return FPModule(ring, side, colspan_canonical(rel))


# -- duality -----------------------------------------------------------


def dual_data(m: FPModule) -> tuple[FPModule, Mat]:
    """(M*, K): K's rows are the generators of M* as functionals on M."""
    K = kernel_left(m.presentation)  # k x rank0
    rel_rows = kernel_left(K)  # r x k, rows are relations among the generators
    mstar = FPModule(m.ring, opposite(m.side), colspan_canonical(rel_rows.transpose()))
    return mstar, K


def dualize_module(m: FPModule) -> FPModule:
    return dual_data(m)[0]


def dualize_map(f: ModuleMap) -> ModuleMap:
    """Hom(-, R) applied to f: M -> N gives f*: N* -> M*."""
    mstar, K_m = dual_data(f.source)
    nstar, K_n = dual_data(f.target)
    pulled = K_n @ f.matrix  # each row is a functional on M
    coeffs = solve_left(K_m, pulled)
    if coeffs is None:
        raise MatrixError("dual functional not expressible; solver invariant broken")
    return ModuleMap(nstar, mstar, coeffs.transpose())


def canonical_double_dual_map(m: FPModule) -> ModuleMap:
    """Evaluation map M -> M**, generator e_i |-> (phi |-> phi(e_i))."""
    mstar, K = dual_data(m)
    mstarstar, K2 = dual_data(mstar)
    # the i'th generator of M evaluates the dual generators to column i of K
    evaluation_rows = K.transpose()  # rank0 x k, row i is e_i's functional on M*
    coeffs = solve_left(K2, evaluation_rows)
    if coeffs is None:
        raise MatrixError("double-dual evaluation not expressible; solver invariant broken")
    return ModuleMap(m, mstarstar, coeffs.transpose())


# -- projectivity and dimension ---------------------------------------


def is_projective(m: FPModule) -> ModuleMap | None:
    """A section of the generator cover R^rank0 -> M, or None.

    A section with matrix S needs S P = 0 (well-defined out of M) and
    S = I + P Y (splits the cover); substituting leaves the single
    linear system P Y P = -P in the entries of Y.
    """
    P = m.presentation
    if m.rank0 == 0:
        return ModuleMap(m, FPModule.free(m.ring, m.side, 0), Mat.zero(m.ring, 0, 0))
    system = P.transpose().kron(P)  # vec(P Y P) = kron(P^T, P) vec(Y)
    rhs = (-P).vec()
    sol = solve_right(system, rhs)
    if sol is None:
        return None
    Y = Mat.unvec(m.ring, sol, m.rank1, m.rank0)
    S = Mat.identity(m.ring, m.rank0) + P @ Y
    assert (S @ P).is_zero()
    return ModuleMap(m, FPModule.free(m.ring, m.side, m.rank0), S)


def syzygy(m: FPModule) -> FPModule:
    """Kernel of the generator cover R^rank0 -> M, presented on the
    columns of the presentation matrix."""
    return FPModule(m.ring, m.side, kernel_right(m.presentation))


def projective_dimension(m: FPModule, bound: int = 16) -> int | None:
    """Exact projective dimension if <= bound, else None ("exceeds bound")."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    current = m
    for d in range(bound + 1):
        if is_projective(current) is not None:
            return d
        current = syzygy(current)
    return None
