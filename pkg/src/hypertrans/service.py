"""Report assembly shared by the command-line and HTTP front ends.

Every entry point returns (report, exit_code) where the report is a
plain-JSON-serializable dict with the stable top-level keys
``verdict, integrability, inhomogeneous, group, assumptions, caveats,
diagnostics, version`` and the exit code is 0 (completed, any verdict),
2 (inconclusive: a solver failure), or 1 (usage / parse error).
"""

from __future__ import annotations

import json
import time
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import galois
from .errors import HypertransError, ParseError, ZeroRhs
from .field import FieldElem
from .linsys import (DiffSystem, ExtensionSystem, MatrixK, direct_sum, dual,
                     extension_from_scalar, gauge, hom, prolong,
                     reduce_extension, tensor)
from .ore import OreOperator, companion
from .parse import parse_expr, parse_operator
from .ratsol import (DEFAULT_MAX_DEGREE, rational_solutions_scalar,
                     rational_solutions_system)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2

CONSTRUCT_KINDS = ("dsum", "tensor", "hom", "dual", "prolong", "reduce")


class UsageError(Exception):
    """Bad request shape (missing/conflicting inputs); maps to exit code 1."""


def matrix_from_json(payload: Dict) -> MatrixK:
    """Read the shared matrix format
    {"rows": R, "cols": C, "entries": [[expr-string, ...], ...]}."""
    try:
        rows, cols = int(payload["rows"]), int(payload["cols"])
        entries = payload["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad matrix payload: {exc}")
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise UsageError("matrix entries do not match the declared shape")
    return MatrixK([[parse_expr(str(e)) for e in row] for row in entries])


def matrix_to_json(m: MatrixK) -> Dict:
    return {"rows": m.rows, "cols": m.cols,
            "entries": [[str(v) for v in row] for row in m.entries]}


def load_matrix_file(path: str) -> MatrixK:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_json(json.load(fh))


def _report(verdict: str, *, integrability=None, inhomogeneous=None,
            group: Optional[str] = None, assumptions: Sequence[str] = (),
            caveats: Sequence[str] = (), diagnostics: Optional[Dict] = None
            ) -> Dict:
    return {
        "verdict": verdict,
        "integrability": integrability,
        "inhomogeneous": inhomogeneous,
        "group": group,
        "assumptions": list(assumptions),
        "caveats": list(caveats),
        "diagnostics": diagnostics or {},
        "version": __version__,
    }


def _system_input(op_text: Optional[str], matrix: Optional[MatrixK]
                  ) -> DiffSystem:
    if (op_text is None) == (matrix is None):
        raise UsageError("exactly one of --op and --matrix is required")
    if op_text is not None:
        return companion(parse_operator(op_text))
    if matrix.rows != matrix.cols:
        raise UsageError("the system matrix must be square")
    return DiffSystem(matrix)


def _solver_failure(verdict_name: str, exc: HypertransError,
                    assumptions: Sequence[str] = ()) -> Tuple[Dict, int]:
    rep = _report("inconclusive", assumptions=assumptions,
                  caveats=[galois.BASE_FIELD_CAVEAT],
                  diagnostics={"error": f"{type(exc).__name__}: {exc}",
                               "request": verdict_name})
    return rep, EXIT_INCONCLUSIVE


def run_ratsol(op_text: Optional[str] = None, rhs_text: Optional[str] = None,
               matrix: Optional[MatrixK] = None, seed: int = 0,
               max_degree: int = DEFAULT_MAX_DEGREE) -> Tuple[Dict, int]:
    """Rational solutions of L(y) = rhs, or of a first-order system."""
    start = time.monotonic()
    if matrix is not None:
        if op_text is not None or rhs_text is not None:
            raise UsageError("--matrix excludes --op/--rhs for ratsol")
        s = _system_input(None, matrix)
        op = rhs = None
    else:
        if op_text is None:
            raise UsageError("ratsol requires --op or --matrix")
        op = parse_operator(op_text)
        rhs = parse_expr(rhs_text) if rhs_text is not None else None
    try:
        if matrix is not None:
            space = rational_solutions_system(s, seed=seed,
                                              max_degree=max_degree)
            basis = [[str(v) for v in vec] for vec in space.basis]
            particular = None
        else:
            space = rational_solutions_scalar(op, rhs, max_degree=max_degree)
            basis = [str(vec[0]) for vec in space.basis]
            particular = (str(space.particular[0])
                          if space.particular is not None else None)
    except HypertransError as exc:
        return _solver_failure("ratsol", exc)
    diag = dict(space.diagnostics)
    diag.update({
        "dimension": space.dimension,
        "basis": basis,
        "particular": particular,
        "denominator": str(space.denominator_used),
        "degree_bound": space.degree_bound,
        "elapsed_s": round(time.monotonic() - start, 3),
    })
    solvable = space.particular is not None
    rep = _report("solutions computed",
                  inhomogeneous=({"solvable": solvable,
                                  "witness": particular}
                                 if rhs_text is not None else None),
                  caveats=[galois.BASE_FIELD_CAVEAT], diagnostics=diag)
    return rep, EXIT_OK


def run_isomono(op_text: Optional[str] = None,
                matrix: Optional[MatrixK] = None, seed: int = 0,
                max_degree: int = DEFAULT_MAX_DEGREE) -> Tuple[Dict, int]:
    """Integrability (isomonodromy) test for dY = A Y."""
    start = time.monotonic()
    s = _system_input(op_text, matrix)
    try:
        res = galois.isomonodromy_test(s, seed=seed, max_degree=max_degree)
    except HypertransError as exc:
        return _solver_failure("isomono", exc)
    integ = {"solvable": res.solvable,
             "witness": matrix_to_json(res.witness) if res.witness else None}
    rep = _report("solvable" if res.solvable else "not solvable",
                  integrability=integ, caveats=[galois.BASE_FIELD_CAVEAT],
                  diagnostics={"size": s.size,
                               "elapsed_s": round(time.monotonic() - start, 3)})
    return rep, EXIT_OK


def run_criterion(op_text: str, rhs_text: str,
                  assume_irreducible: bool = False,
                  assume_quasi_simple: bool = False, seed: int = 0,
                  max_degree: int = DEFAULT_MAX_DEGREE) -> Tuple[Dict, int]:
    """The two-test hypertranscendence criterion for L(y) = b."""
    start = time.monotonic()
    if op_text is None or rhs_text is None:
        raise UsageError("criterion requires --op and --rhs")
    op = parse_operator(op_text)
    b = parse_expr(rhs_text)
    assumptions = []
    if assume_irreducible:
        assumptions.append("L is irreducible over K (user assertion)")
    if assume_quasi_simple:
        assumptions.append("Gal(L) is quasi-simple (user assertion)")
    try:
        v = galois.hypertranscendence_criterion(op, b,
                                                assumptions=assumptions,
                                                seed=seed,
                                                max_degree=max_degree)
    except ZeroRhs as exc:
        raise UsageError(str(exc))
    diag = {"order": int(op.order),
            "elapsed_s": round(time.monotonic() - start, 3)}
    if v.inconclusive:
        diag["error"] = v.error
        return (_report("inconclusive", assumptions=v.assumptions,
                        caveats=v.caveats, diagnostics=diag),
                EXIT_INCONCLUSIVE)
    integ = {"solvable": v.integrability.solvable,
             "witness": (matrix_to_json(v.integrability.witness)
                         if v.integrability.witness else None)}
    inhom = {"solvable": v.inhomogeneous.solvable,
             "witness": (str(v.inhomogeneous.witness)
                         if v.inhomogeneous.witness is not None else None)}
    verdict = ("hypertranscendent" if v.hypertranscendent
               else "not hypertranscendent")
    rep = _report(verdict, integrability=integ, inhomogeneous=inhom,
                  group=v.group_descriptor, assumptions=v.assumptions,
                  caveats=v.caveats, diagnostics=diag)
    rep["hypertranscendent"] = v.hypertranscendent
    return rep, EXIT_OK


def run_construct(kind: str, op_text: Optional[str] = None,
                  rhs_text: Optional[str] = None,
                  matrices: Sequence[MatrixK] = ()) -> Tuple[Dict, int]:
    """Module constructions.  Operands are taken in order: the companion
    system of --op first (if given), then each --matrix.  reduce builds the
    extension system of L(y) = rhs and returns its reduced augmentation."""
    if kind not in CONSTRUCT_KINDS:
        raise UsageError(f"unknown construction {kind!r}")
    systems: List[DiffSystem] = []
    if op_text is not None and kind != "reduce":
        systems.append(companion(parse_operator(op_text)))
    for m in matrices:
        systems.append(_system_input(None, m))
    if kind == "reduce":
        if op_text is None or rhs_text is None:
            raise UsageError("construct reduce requires --op and --rhs")
        ext = extension_from_scalar(parse_operator(op_text),
                                    parse_expr(rhs_text))
        out = reduce_extension(ext).A
    elif kind in ("dsum", "tensor", "hom"):
        if len(systems) != 2:
            raise UsageError(f"construct {kind} takes exactly two operands")
        fn = {"dsum": direct_sum, "tensor": tensor, "hom": hom}[kind]
        out = fn(systems[0], systems[1]).A
    else:
        if len(systems) != 1:
            raise UsageError(f"construct {kind} takes exactly one operand")
        fn = {"dual": dual, "prolong": prolong}[kind]
        out = fn(systems[0]).A
    rep = _report("constructed",
                  diagnostics={"construction": kind,
                               "matrix": matrix_to_json(out)})
    return rep, EXIT_OK


def run_decompose(op_text: Optional[str] = None,
                  matrices: Sequence[MatrixK] = (), seed: int = 0,
                  max_degree: int = DEFAULT_MAX_DEGREE) -> Tuple[Dict, int]:
    """Constant / purely non-constant classification of irreducible blocks.

    Each --matrix file is one block; --op contributes its companion system
    as a block.  Irreducibility of the blocks is taken on trust."""
    blocks: List[DiffSystem] = []
    if op_text is not None:
        blocks.append(companion(parse_operator(op_text)))
    for m in matrices:
        blocks.append(_system_input(None, m))
    if not blocks:
        raise UsageError("decompose requires at least one block")
    try:
        res = galois.decompose_constant_parts(blocks, seed=seed,
                                              max_degree=max_degree)
    except HypertransError as exc:
        return _solver_failure("decompose", exc)
    diag = {
        "constant_indices": res.constant_indices,
        "non_constant_indices": res.non_constant_indices,
        "witnesses": {str(i): matrix_to_json(w)
                      for i, w in res.witnesses.items()},
        "block_sizes": [b.size for b in blocks],
    }
    rep = _report("decomposed",
                  caveats=[galois.BASE_FIELD_CAVEAT,
                           "irreducibility of the blocks is a caller "
                           "assertion"],
                  diagnostics=diag)
    return rep, EXIT_OK
