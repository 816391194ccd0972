"""Scattering identities evaluated as nonnegative residuals.

Each checker takes amplitude quadruples at k (and, where needed, at -k) and
returns how far the identity is from holding. :func:`full_report` runs all
of them for a potential and decides which ones are expected to hold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDError, NonpositiveWavenumberError, SpectralSingularityError, ZeroTransmissionError
from .potential import DeltaPotential, GridPotential, Potential, classify_symmetry
from .scattering import EPS_ZERO, ScatterAmplitudes, amplitudes_from_transfer, d_value
from .symmetry import Transform, transform_amplitudes
from .transfer import IntegratorConfig, transfer_at

TOL_CLOSED_FORM = 1e-12
TOL_COMPOSED = 1e-10
TOL_NUMERIC = 1e-6
EPS_CPA = 1e-8

APPLIES = "applies"
DEGENERATE_D = "degenerate_D"

RESIDUAL_NAMES = (
    "classic_unitarity_l",
    "classic_unitarity_r",
    "reflection_moduli",
    "reciprocity",
    "unitarity_common_l",
    "unitarity_common_r",
    "pseudo_unitarity",
    "pt_moduli_r_l",
    "pt_moduli_r_r",
    "pt_moduli_t",
    "pt_phase_r_l",
    "pt_phase_r_r",
    "pt_phase_t",
    "pt_combined_l",
    "pt_combined_r",
    "id1_l",
    "id1_r",
    "gen_rel_l",
    "gen_rel_r",
    "gen_rel_1",
    "gen_rel_2",
    "mod_d",
    "real_conj_r_l",
    "real_conj_r_r",
    "real_conj_t_l",
    "real_conj_t_r",
)


class PairResidual(NamedTuple):
    left: float
    right: float


def check_generalized_unitarity(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> PairResidual:
    """|T^{l/r}(-k) T^{r/l}(k) + R^{l/r}(-k) R^{l/r}(k) - 1| for both branches."""
    res_l = abs(a_mk.t_l * a_k.t_r + a_mk.r_l * a_k.r_l - 1)
    res_r = abs(a_mk.t_r * a_k.t_l + a_mk.r_r * a_k.r_r - 1)
    return PairResidual(float(res_l), float(res_r))


def check_d_form_relations(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> PairResidual:
    """The generalized relation multiplied through by D(k); holds even where D = 0."""
    d = d_value(a_k)
    if d == 0:
        return PairResidual(0.0, 0.0)
    res1 = abs(d * (a_mk.t_r * a_k.t_l + a_mk.r_l * a_k.r_l - 1))
    res2 = abs(d * (a_mk.t_l * a_k.t_r + a_mk.r_r * a_k.r_r - 1))
    return PairResidual(float(res1), float(res2))


def check_classic_unitarity(a: ScatterAmplitudes) -> PairResidual:
    return PairResidual(
        float(abs(abs(a.r_l) ** 2 + abs(a.t_l) ** 2 - 1)),
        float(abs(abs(a.r_r) ** 2 + abs(a.t_r) ** 2 - 1)),
    )


class PseudoUnitarity(NamedTuple):
    residual: float
    sign: int
    reciprocity_gap: float


def check_pseudo_unitarity(a: ScatterAmplitudes) -> PseudoUnitarity:
    """Best-sign residual of |T|^2 +- |R^l R^r| = 1, with T taken as T^l."""
    t2 = abs(a.t_l) ** 2
    rr = abs(a.r_l * a.r_r)
    plus, minus = abs(t2 + rr - 1), abs(t2 - rr - 1)
    best = (plus, 1) if plus <= minus else (minus, -1)
    return PseudoUnitarity(float(best[0]), best[1], float(abs(a.t_l - a.t_r)))


def _tau_phase(t: complex) -> complex:
    if abs(t) <= EPS_ZERO:
        raise ZeroTransmissionError(f"|T| = {abs(t):.3e}: transmission phase undefined")
    return t / abs(t)


def check_pt_relations(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> dict[str, float]:
    """PT relations between k and -k, using the common T = T^l and e^{i tau} = T/|T|.

    Phase relations: R^{l/r}(-k) = -e^{-2i tau(k)} R^{r/l}(k) and T(-k) = T(k)*.
    Combined form: R^{l/r}(-k) T(k) + R^{r/l}(k) T(-k) = 0.
    Moduli: |R^{l/r}(-k)| = |R^{r/l}(k)|, |T(-k)| = |T(k)|.
    """
    t, tm = a_k.t_l, a_mk.t_l
    phase2 = _tau_phase(t) ** 2
    return {
        "pt_moduli_r_l": float(abs(abs(a_mk.r_l) - abs(a_k.r_r))),
        "pt_moduli_r_r": float(abs(abs(a_mk.r_r) - abs(a_k.r_l))),
        "pt_moduli_t": float(abs(abs(tm) - abs(t))),
        "pt_phase_r_l": float(abs(a_mk.r_l + a_k.r_r / phase2)),
        "pt_phase_r_r": float(abs(a_mk.r_r + a_k.r_l / phase2)),
        "pt_phase_t": float(abs(tm - np.conj(t))),
        "pt_combined_l": float(abs(a_mk.r_l * t + a_k.r_r * tm)),
        "pt_combined_r": float(abs(a_mk.r_r * t + a_k.r_l * tm)),
    }


def check_pt_phase_as_printed(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> PairResidual:
    """Residuals of R^{l/r}(-k) = -e^{+2i tau} R^{r/l}(k), the opposite exponent sign.

    Kept as a diagnostic only: with D = e^{2i tau} for PT-symmetric systems
    this sign is inconsistent with R^l(-k) = -R^r(k)/D.
    """
    phase2 = _tau_phase(a_k.t_l) ** 2
    return PairResidual(
        float(abs(a_mk.r_l + phase2 * a_k.r_r)),
        float(abs(a_mk.r_r + phase2 * a_k.r_l)),
    )


def check_id1(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> PairResidual:
    """|R^{l/r}(k) R^{l/r}(-k) + |T(k)|^2 - 1| with T = T^l."""
    t2 = abs(a_k.t_l) ** 2
    return PairResidual(
        float(abs(a_k.r_l * a_mk.r_l + t2 - 1)),
        float(abs(a_k.r_r * a_mk.r_r + t2 - 1)),
    )


def check_real_potential_relations(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> dict[str, float]:
    c = np.conj
    return {
        "real_conj_r_l": float(abs(a_mk.r_l - c(a_k.r_l))),
        "real_conj_r_r": float(abs(a_mk.r_r - c(a_k.r_r))),
        "real_conj_t_l": float(abs(a_mk.t_l - c(a_k.t_l))),
        "real_conj_t_r": float(abs(a_mk.t_r - c(a_k.t_r))),
        "reflection_moduli": float(abs(abs(a_k.r_l) - abs(a_k.r_r))),
    }


def check_mod_d(a: ScatterAmplitudes) -> float:
    return float(abs(abs(d_value(a)) - 1))


def check_unitarity_common(a: ScatterAmplitudes) -> PairResidual:
    """|R^{l/r}|^2 + |T|^2 = 1 with the common transmission T = T^l."""
    t2 = abs(a.t_l) ** 2
    return PairResidual(float(abs(abs(a.r_l) ** 2 + t2 - 1)), float(abs(abs(a.r_r) ** 2 + t2 - 1)))


# --- report -----------------------------------------------------------------


@dataclass
class IdentityReport:
    k: float
    residuals: dict[str, float]
    applicability: dict[str, str]
    tolerance: float
    d: complex
    amplitudes: ScatterAmplitudes
    pseudo_sign: int = 0
    minus_k_discrepancy: float | None = None
    extras: dict[str, float] = field(default_factory=dict)

    def failures(self, tolerance: float | None = None) -> list[str]:
        tol = self.tolerance if tolerance is None else tolerance
        return [
            name
            for name in RESIDUAL_NAMES
            if self.applicability[name] == APPLIES and not self.residuals[name] <= tol
        ]

    def passed(self, tolerance: float | None = None) -> bool:
        return not self.failures(tolerance)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "residuals": {n: self.residuals[n] for n in RESIDUAL_NAMES},
            "applicability": {n: self.applicability[n] for n in RESIDUAL_NAMES},
            "tolerance": self.tolerance,
            "d": [self.d.real, self.d.imag],
            "pseudo_sign": self.pseudo_sign,
            "minus_k_discrepancy": self.minus_k_discrepancy,
            "extras": self.extras,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def construction_tolerance(p: Potential) -> float:
    if isinstance(p, GridPotential):
        return TOL_NUMERIC
    if isinstance(p, DeltaPotential) and len(p.items) <= 1:
        return TOL_CLOSED_FORM
    return TOL_COMPOSED


def _not_applicable(reason: str) -> str:
    return f"not_applicable: {reason}"


def evaluate_identities(a_k: ScatterAmplitudes, a_mk: ScatterAmplitudes) -> tuple[dict[str, float], int]:
    """All residuals at one k, evaluated unconditionally."""
    res: dict[str, float] = {}
    res["classic_unitarity_l"], res["classic_unitarity_r"] = check_classic_unitarity(a_k)
    res["unitarity_common_l"], res["unitarity_common_r"] = check_unitarity_common(a_k)
    res["reciprocity"] = float(abs(a_k.t_l - a_k.t_r))
    pseudo = check_pseudo_unitarity(a_k)
    res["pseudo_unitarity"] = pseudo.residual
    try:
        res.update(check_pt_relations(a_k, a_mk))
    except ZeroTransmissionError:
        res.update({n: float("nan") for n in RESIDUAL_NAMES if n.startswith("pt_")})
    res["id1_l"], res["id1_r"] = check_id1(a_k, a_mk)
    res["gen_rel_l"], res["gen_rel_r"] = check_generalized_unitarity(a_k, a_mk)
    res["gen_rel_1"], res["gen_rel_2"] = check_d_form_relations(a_k, a_mk)
    res["mod_d"] = check_mod_d(a_k)
    res.update(check_real_potential_relations(a_k, a_mk))
    return res, pseudo.sign


def full_report(p: Potential, k: float, cfg: IntegratorConfig | None = None, tolerance: float | None = None) -> IdentityReport:
    """Evaluate every identity for ``p`` at wavenumber k > 0.

    Amplitudes at -k come from an independent evaluation of the transfer
    matrix at -k. The k -> -k amplitude transform is applied as well and its
    largest deviation from the direct evaluation is stored as
    ``minus_k_discrepancy`` (None at CPA points, where it is undefined).
    """
    if not k > 0:
        raise NonpositiveWavenumberError(f"wavenumber must be positive, got {k}")
    cfg = cfg or IntegratorConfig()
    a_k = amplitudes_from_transfer(transfer_at(p, k, cfg))
    # -k is a spectral singularity exactly when k is a CPA point, so only an
    # exact zero of M22(-k) is refused here
    try:
        a_mk = amplitudes_from_transfer(transfer_at(p, -k, cfg), eps_zero=0.0)
    except SpectralSingularityError:
        nan = complex("nan")
        a_mk = ScatterAmplitudes(k, nan, nan, nan, nan, reversed=True)
    d = d_value(a_k)

    residuals, sign = evaluate_identities(a_k, a_mk)

    discrepancy = None
    try:
        via_transform = transform_amplitudes(a_k, Transform.REVERSE_K)
        discrepancy = float(np.max(np.abs(np.subtract(via_transform.as_tuple(), a_mk.as_tuple()))))
    except DegenerateDError:
        pass

    sym = classify_symmetry(p)
    real_or_pt = sym.is_real or sym.is_pt_symmetric
    app: dict[str, str] = {}
    for name in RESIDUAL_NAMES:
        if name in ("reciprocity", "gen_rel_1", "gen_rel_2"):
            app[name] = APPLIES
        elif name in ("gen_rel_l", "gen_rel_r"):
            app[name] = APPLIES if abs(d) > EPS_CPA else DEGENERATE_D
        elif name.startswith(("classic_unitarity", "unitarity_common", "real_conj")) or name == "reflection_moduli":
            app[name] = APPLIES if sym.is_real else _not_applicable("potential is not real")
        elif name.startswith("pt_") or name == "pseudo_unitarity":
            app[name] = APPLIES if sym.is_pt_symmetric else _not_applicable("potential is not PT-symmetric")
        else:  # id1_*, mod_d
            app[name] = APPLIES if real_or_pt else _not_applicable("potential is neither real nor PT-symmetric")

    try:
        printed = check_pt_phase_as_printed(a_k, a_mk)
        extras = {"pt_phase_printed_l": printed.left, "pt_phase_printed_r": printed.right}
    except ZeroTransmissionError:
        extras = {}

    return IdentityReport(
        k=k,
        residuals=residuals,
        applicability=app,
        tolerance=construction_tolerance(p) if tolerance is None else tolerance,
        d=complex(d),
        amplitudes=a_k,
        pseudo_sign=sign,
        minus_k_discrepancy=discrepancy,
        extras=extras,
    )
