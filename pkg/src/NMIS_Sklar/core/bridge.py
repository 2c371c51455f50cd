"""
Main SklarBridge class - the primary API for the package.

Provides one method per CLI subcommand, each returning a CommandResult
whose ``passed`` flag drives the exit code.
"""

import logging
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .config import config
from .exception import DimensionError
from .numerics import TolerancePolicy, Track, is_exact, parse_scalar, same_value
from ..connectors.factory import ConnectorFactory
from ..connectors.json_connector import load_margins, read_json
from ..copulas.compose import roundtrip_check, sklar_compose
from ..copulas.extension import (
    Copula,
    CopulaLike,
    comonotone_copula,
    countermonotone_copula,
    extensions_coincide,
    independence_copula,
    verify_copula_axioms,
    verify_grid_agreement,
)
from ..copulas.registry import extensions
from ..copulas.subcopula import extract, subcopula_is_copula, verify_representation, verify_subcopula_axioms
from ..dependence.marginfree import ipf
from ..dependence.measures import margin_sensitivity, measures
from ..distributions.joint import JointPMF
from ..distributions.margins import Margin
from ..exporters.factory import ExporterFactory
from ..models.reports import CommandResult, Report
from ..oracle.reference import cdf_by_enumeration, copula_integral_by_quadrature, tau_by_pair_enumeration

logger = logging.getLogger(__name__)

_REFERENCE_COPULAS = {
    "independence": independence_copula,
    "comonotone": comonotone_copula,
    "countermonotone": lambda dims: countermonotone_copula(),
}


def _all_passed(reports: Sequence[Report]) -> bool:
    return all(r.passed for r in reports)


class SklarBridge:
    """
    Main interface for Sklar-theorem computations.

    Example:
        bridge = SklarBridge()
        joint = bridge.load("pA.csv")
        result = bridge.verify(joint, method="patchwork-m")
        print(bridge.export(result, "json"))
    """

    def __init__(self, policy: Optional[TolerancePolicy] = None):
        self.policy = policy or config.tolerance

    def load(
        self,
        source: Path | str,
        input_format: Optional[str] = None,
        counts: bool = False,
        track: Optional[Track] = None,
        **connector_kwargs: Any,
    ) -> JointPMF:
        """
        Read a joint distribution from a file.

        Args:
            source: Path to the input file
            input_format: 'csv2d', 'csv-long', 'json' or 'excel' (from suffix if None)
            counts: Normalize counts instead of requiring probabilities
            track: 'rational' (exact) or 'float'
        """
        input_format = input_format or ConnectorFactory.detect(source)
        connector = ConnectorFactory.create(input_format, counts=counts, track=track, **connector_kwargs)
        joint = connector.load(source)
        logger.info("Loaded %s joint with shape %s from %s", joint.track, joint.shape, source)
        return joint

    @staticmethod
    def load_margins(source: Path | str) -> List[Margin]:
        return load_margins(source)

    @staticmethod
    def load_copula(source: str, dims: int) -> CopulaLike:
        """
        Copula from a reference name (independence, comonotone,
        countermonotone) or from a JSON descriptor file.
        """
        if source in _REFERENCE_COPULAS:
            return _REFERENCE_COPULAS[source](dims)
        data = read_json(source)
        kind = data.get("kind") if isinstance(data, dict) else None
        if kind in _REFERENCE_COPULAS:
            return _REFERENCE_COPULAS[kind](int(data.get("dims", dims)))
        return Copula.from_json(data)

    def subcopula(self, j: JointPMF) -> CommandResult:
        h = extract(j)
        axioms = verify_subcopula_axioms(h, policy=self.policy)
        return CommandResult(
            command="subcopula",
            passed=axioms.passed,
            payload={
                "subcopula": h.to_json(),
                "domain": [r.to_json() for r in h.domain],
                "axioms": axioms,
            },
        )

    def extend(
        self,
        j: JointPMF,
        method: str = "checkerboard",
        probes: Optional[Sequence[Sequence[Any]]] = None,
    ) -> CommandResult:
        """Extend j's subcopula and evaluate the copula at the probe points."""
        c = extensions.apply(method, extract(j))
        agreement = verify_grid_agreement(c, policy=self.policy)
        values = []
        for point in probes or ():
            u = tuple(parse_scalar(x, j.track) for x in point)
            values.append({"u": u, "value": c(u)})
        return CommandResult(
            command="extend",
            passed=agreement.passed,
            payload={"copula": c.to_json(), "grid_agreement": agreement, "probes": values},
        )

    def compose(self, copula: CopulaLike, margins: Sequence[Margin]) -> CommandResult:
        """
        Compose a copula with margins and check that the composed joint has
        exactly those margins.
        """
        composed = sklar_compose(copula, margins)
        report = self._check_composed_margins(composed)
        derived = composed.derived
        return CommandResult(
            command="compose",
            passed=report.passed,
            payload={
                "joint": derived.to_json() if derived is not None else None,
                "materialized": derived is not None,
                "margins_check": report,
            },
            table=derived,
        )

    def _check_composed_margins(self, composed) -> Report:
        worst, witness, probes = None, None, 0
        for k, margin in enumerate(composed.margins):
            points = margin.atoms if margin.is_discrete else tuple(x for x, _ in margin.breakpoints)
            for x in points:
                point = [float("inf")] * composed.dims
                point[k] = x
                value, expected = composed.cdf(point), margin.cdf(x)
                probes += 1
                discrepancy = abs(value - expected)
                if worst is None or discrepancy > worst:
                    worst, witness = discrepancy, (k, x)
        passed = same_value(worst, 0, self.policy)
        return Report(
            check="composed_margins",
            passed=passed,
            max_discrepancy=worst,
            witness=None if passed else witness,
            message="" if passed else f"Composed margin {witness[0]} differs from the input at {witness[1]}",
            details={"probes": probes},
        )

    def verify(
        self,
        j: JointPMF,
        method: str = "checkerboard",
        n_boxes: Optional[int] = None,
        seed: Optional[int] = None,
        oracle: bool = False,
    ) -> CommandResult:
        """
        Representation, subcopula axioms, copula axioms of the extension,
        grid agreement and roundtrip, optionally cross-checked by the oracle.
        """
        h = extract(j)
        c = extensions.apply(method, h)
        reports = {
            "representation": verify_representation(j, h, self.policy),
            "subcopula_axioms": verify_subcopula_axioms(h, policy=self.policy),
            "copula_axioms": verify_copula_axioms(c, n_boxes=n_boxes, seed=seed, policy=self.policy),
            "grid_agreement": verify_grid_agreement(c, policy=self.policy),
            "roundtrip": roundtrip_check(j, method, self.policy),
        }
        if oracle:
            reports["cdf_oracle"] = self._cdf_oracle(j)
        exact = [r.max_discrepancy for r in reports.values() if r.max_discrepancy is not None]
        return CommandResult(
            command="verify",
            passed=_all_passed(list(reports.values())),
            payload={
                "method": method,
                "max_discrepancy": max(exact) if exact else None,
                "reports": reports,
            },
        )

    def _cdf_oracle(self, j: JointPMF) -> Report:
        worst, witness = None, None
        for x in product(*j.axes):
            discrepancy = abs(j.cdf(x) - cdf_by_enumeration(j, x))
            if worst is None or discrepancy > worst:
                worst, witness = discrepancy, x
        passed = same_value(worst, 0, self.policy)
        return Report(check="cdf_oracle", passed=passed, max_discrepancy=worst, witness=None if passed else witness)

    def roundtrip(self, j: JointPMF, method: str = "checkerboard") -> CommandResult:
        report = roundtrip_check(j, method, self.policy)
        return CommandResult(command="roundtrip", passed=report.passed, payload={"report": report})

    def measures(self, j: JointPMF, oracle: bool = False) -> CommandResult:
        """Kendall's tau and Spearman's rho, optionally checked against the oracles."""
        report = measures(j)
        payload: Dict[str, Any] = {"measures": report}
        checks: List[Report] = []
        if oracle:
            tau = tau_by_pair_enumeration(j)
            tau_ok = same_value(tau, report.tau, self.policy)
            checks.append(Report(
                check="tau_oracle",
                passed=tau_ok,
                max_discrepancy=abs(tau - report.tau),
                witness=None if tau_ok else ("tau", report.tau, tau),
                message="" if tau_ok else "Cumulative-sum tau differs from pair enumeration",
            ))
            c = extensions.apply("checkerboard", extract(j))
            quadrature = copula_integral_by_quadrature(c, self.policy.quadrature_rel_tol)
            closed = float((report.rho + 3) / 12)
            gap = abs(quadrature - closed)
            rho_ok = bool(gap <= self.policy.quadrature_rel_tol * max(abs(closed), 1e-300))
            checks.append(Report(
                check="rho_oracle",
                passed=rho_ok,
                max_discrepancy=gap,
                witness=None if rho_ok else ("integral", closed, quadrature),
                message="" if rho_ok else "Closed-form copula integral differs from quadrature",
                details={"quadrature_integral": quadrature},
            ))
            payload["oracle"] = checks
        return CommandResult(command="measures", passed=_all_passed(checks), payload=payload)

    def margin_sensitivity(
        self,
        j: JointPMF,
        weights: Sequence[Sequence[Any]],
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> CommandResult:
        """Measures before and after rescaling; fails unless both IPF fits converge."""
        table = margin_sensitivity(j, weights, tol=tol, max_iter=max_iter)
        return CommandResult(
            command="margin-sensitivity",
            passed=table.converged and table.odds_ratios_equal is not False,
            payload=table.to_json(),
            table=table,
        )

    def ipf(self, j: JointPMF, tol: Optional[float] = None, max_iter: Optional[int] = None) -> CommandResult:
        core, diagnostics = ipf(j, tol=tol, max_iter=max_iter, policy=self.policy)
        return CommandResult(
            command="ipf",
            passed=diagnostics.converged,
            payload={"copula": core.to_json(), "diagnostics": diagnostics.to_json()},
            table=core,
        )

    def demo_nonunique(
        self,
        j: JointPMF,
        resolution: Optional[int] = None,
        methods: Sequence[str] = ("checkerboard", "patchwork-m"),
    ) -> CommandResult:
        """
        Two extensions of the same subcopula: both agree with it on the grid,
        both reproduce j, yet they differ off the grid.
        """
        first, second = methods
        h = extract(j)
        per_method: Dict[str, Any] = {}
        copulas = []
        checks: List[Report] = []
        for method in methods:
            c = extensions.apply(method, h)
            copulas.append(c)
            agreement = verify_grid_agreement(c, policy=self.policy)
            roundtrip = roundtrip_check(j, method, self.policy)
            checks += [agreement, roundtrip]
            per_method[method] = {"grid_agreement": agreement, "roundtrip": roundtrip}
        difference = extensions_coincide(copulas[0], copulas[1], resolution)
        distinct = not same_value(difference.max_difference, 0, self.policy)
        logger.info(
            "%s and %s differ by %s at %s", first, second, difference.max_difference, difference.witness
        )
        return CommandResult(
            command="demo-nonunique",
            passed=_all_passed(checks),
            payload={
                "subcopula": h.to_json(),
                "extensions": per_method,
                "difference": {
                    "point": difference.witness,
                    first: difference.first_value,
                    second: difference.second_value,
                    "max_difference": difference.max_difference,
                    "resolution": difference.resolution,
                },
                "distinct": distinct,
            },
        )

    def demo_unique_continuous(
        self,
        margins: Sequence[Margin],
        j: Optional[JointPMF] = None,
        resolution: Optional[int] = None,
        methods: Sequence[str] = ("checkerboard", "patchwork-m"),
    ) -> CommandResult:
        """
        Compose a copula (j's checkerboard copula, or independence) with the
        given margins, extract the subcopula back and compare two of its
        extensions. With continuous margins there is only one.
        """
        if j is not None and j.dims != len(margins):
            raise DimensionError(f"Joint has d={j.dims} but {len(margins)} margins were given")
        base = extensions.apply("checkerboard", extract(j)) if j is not None else independence_copula(len(margins))
        h = extract(sklar_compose(base, margins))
        first, second = (extensions.apply(m, h) for m in methods)
        result = extensions_coincide(first, second, resolution)
        passed = same_value(result.max_difference, 0, self.policy)
        return CommandResult(
            command="demo-unique-continuous",
            passed=passed,
            payload={
                "methods": list(methods),
                "subcopula_is_copula": subcopula_is_copula(h),
                "exact": is_exact(result.max_difference),
                "coincidence": result,
            },
        )

    @staticmethod
    def export(result: Any, output_format: str = "json", output: Optional[Path | str] = None) -> str:
        """Render a result with the named exporter, writing it if output is given."""
        exporter = ExporterFactory.create(output_format)
        data = result
        if output_format == "csv" and isinstance(result, CommandResult) and result.table is not None:
            data = result.table
        return exporter.export(data, output)

    @staticmethod
    def list_methods() -> List[str]:
        """List available extension methods."""
        return extensions.list()

    @staticmethod
    def list_connectors() -> List[str]:
        """List available input formats."""
        return ConnectorFactory.list_connectors()
