"""Decision procedures: integrability test, constant/non-constant
decomposition, unipotent radical of the non-constant part, and the
hypertranscendence criterion for L(y) = b.

Everything is reduced to rational-solution computations; witnesses are
always re-verified by exact substitution before being reported, and solver
failures surface as explicit inconclusive outcomes, never as defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (ConstantPartOutOfScope, HypertransError, ZeroRhs)
from .field import FieldElem
from .linsys import (DiffSystem, ExtensionSystem, MatrixK, block_matrix,
                     hom, reduce_extension)
from .ore import OreOperator, companion
from .ratsol import DEFAULT_MAX_DEGREE, rational_solutions_system

CONSTANT_PART_MESSAGE = (
    "unipotent radical of a constant part is out of scope: it requires the "
    "constant-coefficient unipotent-radical algorithm, which this tool does "
    "not implement")

BASE_FIELD_CAVEAT = (
    "all rational-solution certificates are over Q(t); 'no solution' means "
    "no solution with Q(t) coefficients")


@dataclass
class IntegrabilityResult:
    solvable: bool
    witness: Optional[MatrixK]


@dataclass
class DecompositionResult:
    constant_indices: List[int]
    non_constant_indices: List[int]
    witnesses: Dict[int, MatrixK]


@dataclass
class SplitResult:
    solvable: bool
    witness: Optional[MatrixK]


@dataclass
class ComponentReport:
    index: int
    size: int
    split: bool
    witness: Optional[MatrixK]


@dataclass
class RadicalReport:
    components: List[ComponentReport]
    radical_dimension: int
    descriptor: str
    approximate: bool
    notes: List[str] = field(default_factory=list)


@dataclass
class InhomogeneousResult:
    solvable: bool
    witness: Optional[FieldElem]


@dataclass
class Verdict:
    integrability: Optional[IntegrabilityResult]
    inhomogeneous: Optional[InhomogeneousResult]
    hypertranscendent: Optional[bool]
    group_descriptor: Optional[str]
    assumptions: List[str]
    caveats: List[str]
    inconclusive: bool = False
    error: Optional[str] = None


def _integrability_system(a: MatrixK) -> DiffSystem:
    """Size n^2+1 system whose solutions are (vec B, lam) with
    dB/dx = A B - B A + lam * dA/dt and lam a d/dx-constant."""
    s = DiffSystem(a)
    h = hom(s, s).A
    vc = MatrixK([[v] for v in a.d_t().vec()])
    top = block_matrix([[h, vc]])
    return DiffSystem(block_matrix([[top], [MatrixK.zero(1, h.cols + 1)]]))


def _verify_integrability(a: MatrixK, b: MatrixK) -> bool:
    lhs = b.d_x() - a.d_t()
    rhs = a * b - b * a
    return (lhs - rhs).is_zero()


def isomonodromy_test(s: DiffSystem, seed: int = 0,
                      max_degree: int = DEFAULT_MAX_DEGREE) -> IntegrabilityResult:
    """Decide existence of B over K with dB/dx - dA/dt = AB - BA."""
    a = s.A
    n = s.size
    if a.d_t().is_zero():
        return IntegrabilityResult(True, MatrixK.zero(n, n))
    space = rational_solutions_system(_integrability_system(a), seed=seed,
                                      max_degree=max_degree)
    for vec in space.basis:
        lam = vec[-1]
        if lam.is_zero():
            continue
        inv = lam.invert()
        b = MatrixK.unvec([inv * v for v in vec[:-1]], n, n)
        assert _verify_integrability(a, b), "integrability witness must verify"
        return IntegrabilityResult(True, b)
    return IntegrabilityResult(False, None)


def decompose_constant_parts(blocks: Sequence[DiffSystem], seed: int = 0,
                             max_degree: int = DEFAULT_MAX_DEGREE
                             ) -> DecompositionResult:
    """Partition irreducible blocks into constant / purely non-constant parts.

    Irreducibility of each block is a caller assertion and is not checked.
    """
    constant, non_constant, witnesses = [], [], {}
    for idx, blk in enumerate(blocks):
        res = isomonodromy_test(blk, seed=seed, max_degree=max_degree)
        if res.solvable:
            constant.append(idx)
            witnesses[idx] = res.witness
        else:
            non_constant.append(idx)
    return DecompositionResult(constant, non_constant, witnesses)


def split_test_extension(e: ExtensionSystem, seed: int = 0,
                         max_degree: int = DEFAULT_MAX_DEGREE) -> SplitResult:
    """Decide existence of rational F with dF = A2 F - F A1 + C."""
    if e.C.is_zero():
        return SplitResult(True, MatrixK.zero(e.n2, e.n1))
    space = rational_solutions_system(reduce_extension(e), seed=seed,
                                      max_degree=max_degree)
    for vec in space.basis:
        lam = vec[-1]
        if lam.is_zero():
            continue
        inv = lam.invert()
        f = MatrixK.unvec([inv * v for v in vec[:-1]], e.n2, e.n1)
        resid = f.d_x() - (e.A2 * f - f * e.A1 + e.C)
        assert resid.is_zero(), "split witness must verify"
        return SplitResult(True, f)
    return SplitResult(False, None)


def unipotent_radical_nc(blocks: Sequence[DiffSystem],
                         c_blocks: Sequence[MatrixK], seed: int = 0,
                         max_degree: int = DEFAULT_MAX_DEGREE) -> RadicalReport:
    """Unipotent radical of the extension of the trivial module by the direct
    sum of purely non-constant irreducible blocks, with extension columns
    c_blocks (each n_i x 1).

    The answer is exact when the blocks are pairwise non-isomorphic (checked
    through the hom rational-solution spaces); otherwise it is an upper
    bound flagged approximate.  A block detected as constant is refused.
    """
    if len(blocks) != len(c_blocks):
        raise ValueError("one extension column per block is required")
    notes: List[str] = []
    for idx, blk in enumerate(blocks):
        res = isomonodromy_test(blk, seed=seed, max_degree=max_degree)
        if res.solvable:
            raise ConstantPartOutOfScope(
                f"block {idx} has a constant part: {CONSTANT_PART_MESSAGE}")
    approximate = False
    for i in range(len(blocks)):
        for j in range(len(blocks)):
            if i == j:
                continue
            space = rational_solutions_system(hom(blocks[i], blocks[j]),
                                              seed=seed, max_degree=max_degree)
            if space.dimension > 0:
                approximate = True
                notes.append(
                    f"blocks {i} and {j} admit a nonzero morphism; the "
                    "radical below is only an upper bound")
    components = []
    dim = 0
    for idx, (blk, col) in enumerate(zip(blocks, c_blocks)):
        ext = ExtensionSystem(blk.A, MatrixK.zero(1, 1), col)
        res = split_test_extension(ext, seed=seed, max_degree=max_degree)
        components.append(ComponentReport(idx, blk.size, res.solvable,
                                          res.witness))
        if not res.solvable:
            dim += blk.size
    descriptor = f"G_a^{dim}" if dim else "trivial"
    return RadicalReport(components, dim, descriptor, approximate, notes)


def hypertranscendence_criterion(op: OreOperator, b: FieldElem,
                                 assumptions: Sequence[str] = (),
                                 seed: int = 0,
                                 max_degree: int = DEFAULT_MAX_DEGREE) -> Verdict:
    """The two-test hypertranscendence criterion for L(y) = b.

    Certifies exactly two facts: (non-)existence of an integrability
    witness for the companion system of L, and (non-)solvability of
    L(y) = b in K.  The hypotheses on L (irreducibility, quasi-simple
    Galois group, dim != ord) are recorded, not verified.
    """
    from .ratsol import rational_solutions_scalar

    if b.is_zero():
        raise ZeroRhs("the criterion requires b in K*")
    n = int(op.order)
    assumptions = list(assumptions)
    caveats = [BASE_FIELD_CAVEAT]
    try:
        integ = isomonodromy_test(companion(op), seed=seed,
                                  max_degree=max_degree)
        scalar = rational_solutions_scalar(op, b, max_degree=max_degree)
    except HypertransError as exc:
        return Verdict(None, None, None, None, assumptions,
                       caveats + ["a solver failure left the criterion "
                                  "undecided; no verdict is implied"],
                       inconclusive=True, error=f"{type(exc).__name__}: {exc}")
    inhom = InhomogeneousResult(scalar.particular is not None,
                                scalar.particular[0] if scalar.particular else None)
    hyper = (not integ.solvable) and (not inhom.solvable)
    descriptor = None
    if hyper:
        group = "SL2" if n == 2 else "Gal(L)"
        descriptor = f"G_a^{n} ⋊ {group}"
    if integ.solvable and companion(op).A.d_t().is_zero():
        caveats.append("coefficient matrix is t-free: the system is "
                       "conjugate to constants")
    return Verdict(integ, inhom, hyper, descriptor, assumptions, caveats)
