"""Campaign runner and machine-readable trial records.

A campaign draws seeded trials from an ensemble config, evaluates one
bound variant (or equality/proof-chain check) per trial, and emits one
JSON record per line plus a summary footer file.  Records are
re-checkable: the (config, trial_id) pair pins the exact inputs.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .bounds import (
    GAP_SLACK,
    VARIANT_CONSTRAINED,
    VARIANT_MINIMIZED,
    VARIANT_UNCONSTRAINED,
    assistant_state_check,
    bound_constrained,
    bound_minimized,
    bound_unconstrained,
    exact_biorthogonal_entanglement,
    mixing_entropy,
    normalization_coeffs,
    NormalizationCoeffs,
)
from .ensembles import EnsembleConfig, RandomStream, generate_spec
from .errors import DomainError, InvariantViolationError
from .serialize import config_to_json, dumps, format_float
from .superposition import SuperpositionSpec, component_entanglements, superposition_entanglement

VARIANT_EXACT = "exact"
VARIANT_ASSISTANT = "assistant"
VARIANTS = (
    VARIANT_CONSTRAINED,
    VARIANT_UNCONSTRAINED,
    VARIANT_MINIMIZED,
    VARIANT_EXACT,
    VARIANT_ASSISTANT,
)

EQUALITY_TOL = 1e-9  # |formula - direct| for the biorthogonal equality check


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    config: EnsembleConfig
    variant: str
    lhs: float
    rhs: float
    gap: float
    correction: float
    component_entanglements: tuple[float, ...]
    checks: dict[str, bool]
    permutation: tuple[int, ...] | None = None

    @property
    def is_violation(self) -> bool:
        return self.gap < -GAP_SLACK or not all(self.checks.values())


@dataclass(frozen=True)
class CampaignSummary:
    trials: int
    violations: int
    min_gap: float
    mean_gap: float
    max_gap: float
    runtime_seconds: float


def trial_stream(config: EnsembleConfig, trial_id: int) -> RandomStream:
    """The substream that pins every draw of one trial."""
    return RandomStream(config.seed).child(f"trial-{trial_id}")


@dataclass(frozen=True)
class TrialEvaluation:
    """Outcome of one variant on one spec, ready to serialize."""

    lhs: float
    rhs: float
    correction: float
    component_entanglements: tuple[float, ...]
    checks: dict[str, bool]
    permutation: tuple[int, ...] | None = None

    @property
    def gap(self) -> float:
        return self.rhs - self.lhs


def evaluate_variant(spec: SuperpositionSpec, variant: str) -> TrialEvaluation:
    """Evaluate one bound variant (or equality/proof-chain check) on a spec."""
    if variant in (VARIANT_CONSTRAINED, VARIANT_UNCONSTRAINED, VARIANT_MINIMIZED):
        fn = {
            VARIANT_CONSTRAINED: bound_constrained,
            VARIANT_UNCONSTRAINED: bound_unconstrained,
            VARIANT_MINIMIZED: bound_minimized,
        }[variant]
        rep = fn(spec)
        return TrialEvaluation(
            lhs=rep.lhs,
            rhs=rep.rhs,
            correction=rep.correction,
            component_entanglements=rep.component_entanglements,
            checks={},
            permutation=rep.permutation,
        )
    if variant == VARIANT_EXACT:
        direct = superposition_entanglement(spec)
        formula = exact_biorthogonal_entanglement(spec)
        return TrialEvaluation(
            lhs=direct,
            rhs=formula,
            correction=mixing_entropy(spec.coefficients),
            component_entanglements=tuple(
                float(e) for e in component_entanglements(spec)
            ),
            checks={"biorth_equality": abs(formula - direct) < EQUALITY_TOL},
        )
    if variant == VARIANT_ASSISTANT:
        rep = assistant_state_check(spec)
        return TrialEvaluation(
            lhs=rep.s_rho_b,
            rhs=rep.upper_bound,
            correction=mixing_entropy(spec.coefficients),
            component_entanglements=tuple(
                float(e) for e in component_entanglements(spec)
            ),
            checks={
                "norm_partition": rep.norm_partition_residual < EQUALITY_TOL,
                "sandwich_lower": rep.sandwich_lower_ok,
                "sandwich_upper": rep.sandwich_upper_ok,
                "final_bound": rep.final_bound_ok,
            },
        )
    raise DomainError(f"unknown variant {variant!r}, expected one of {VARIANTS}")


def run_trial(
    config: EnsembleConfig,
    variant: str,
    trial_id: int,
    coeffs: NormalizationCoeffs | None = None,
) -> TrialRecord:
    """Draw and evaluate a single trial."""
    if coeffs is None:
        coeffs = normalization_coeffs(config.n)
    spec = generate_spec(config, coeffs, trial_stream(config, trial_id))
    ev = evaluate_variant(spec, variant)
    return TrialRecord(
        trial_id=trial_id,
        config=config,
        variant=variant,
        lhs=ev.lhs,
        rhs=ev.rhs,
        gap=ev.gap,
        correction=ev.correction,
        component_entanglements=ev.component_entanglements,
        checks=ev.checks,
        permutation=ev.permutation,
    )


def iter_trials(config: EnsembleConfig, variant: str, trials: int) -> Iterator[TrialRecord]:
    """Lazily evaluate trial_id = 0 .. trials-1 in order.

    A trial that trips a numeric invariant is recorded as a violation
    rather than aborting the campaign.
    """
    if trials < 1:
        raise DomainError(f"need at least one trial, got {trials}")
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    coeffs = normalization_coeffs(config.n)
    for trial_id in range(trials):
        try:
            yield run_trial(config, variant, trial_id, coeffs)
        except InvariantViolationError:
            yield TrialRecord(
                trial_id=trial_id,
                config=config,
                variant=variant,
                lhs=0.0,
                rhs=0.0,
                gap=0.0,
                correction=0.0,
                component_entanglements=(),
                checks={"numeric_invariants": False},
            )


def record_to_json(record: TrialRecord) -> dict:
    out = {
        "trial_id": record.trial_id,
        "variant": record.variant,
        "lhs": record.lhs,
        "rhs": record.rhs,
        "gap": record.gap,
        "correction": record.correction,
        "component_entanglements": list(record.component_entanglements),
        "checks": dict(record.checks),
    }
    if record.permutation is not None:
        out["permutation"] = list(record.permutation)
    out["config"] = config_to_json(record.config)
    return out


def summary_to_json(summary: CampaignSummary) -> dict:
    return {
        "trials": summary.trials,
        "violations": summary.violations,
        "min_gap": summary.min_gap,
        "mean_gap": summary.mean_gap,
        "max_gap": summary.max_gap,
        "runtime_seconds": summary.runtime_seconds,
    }


def summary_path_for(out_path: str | Path) -> Path:
    return Path(out_path).with_suffix(".summary.json")


def run_campaign(
    config: EnsembleConfig,
    variant: str,
    trials: int,
    out_path: str | Path,
    csv_path: str | Path | None = None,
) -> CampaignSummary:
    """Run a campaign, writing JSON-lines records plus a summary footer.

    The records file is byte-identical across re-runs with the same
    arguments; the summary repeats the deterministic fields and adds the
    wall-clock runtime.
    """
    start = time.perf_counter()
    violations = 0
    count = 0
    min_gap = float("inf")
    max_gap = float("-inf")
    gap_sum = 0.0
    out_path = Path(out_path)
    csv_writer = None
    csv_file = None
    try:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            if csv_path is not None:
                csv_file = open(csv_path, "w", encoding="utf-8", newline="")
                csv_writer = csv.writer(csv_file)
                csv_writer.writerow(
                    ["trial_id", "variant", "lhs", "rhs", "gap", "correction"]
                )
            for record in iter_trials(config, variant, trials):
                fh.write(dumps(record_to_json(record)) + "\n")
                if csv_writer is not None:
                    csv_writer.writerow(
                        [
                            record.trial_id,
                            record.variant,
                            format_float(record.lhs),
                            format_float(record.rhs),
                            format_float(record.gap),
                            format_float(record.correction),
                        ]
                    )
                violations += int(record.is_violation)
                count += 1
                min_gap = min(min_gap, record.gap)
                max_gap = max(max_gap, record.gap)
                gap_sum += record.gap
    finally:
        if csv_file is not None:
            csv_file.close()
    summary = CampaignSummary(
        trials=count,
        violations=violations,
        min_gap=min_gap,
        mean_gap=gap_sum / count,
        max_gap=max_gap,
        runtime_seconds=time.perf_counter() - start,
    )
    summary_path_for(out_path).write_text(
        dumps(summary_to_json(summary)) + "\n", encoding="utf-8"
    )
    return summary
