"""Run configuration: flat INI-style text with strict validation.

Format: ``[section]`` headers, ``key = value`` lines, ``#`` comments,
booleans ``true``/``false``, comma-separated lists. Unknown sections or
keys are hard errors (no silent typo tolerance); every parse or constraint
error carries the offending line or key name.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .spectral_density import Kind, SpectralDensity, calibrate_coupling

JOBS = ("absorb", "twodir", "validate", "stability")

_BATH_KINDS = ("drude_lorentz", "power_exp_cutoff")


@dataclass
class RunConfig:
    # oscillator
    omega0_cm: float
    temperature_K: float
    delta_cm: float = 16.0
    mu: float = 1.0
    # bath
    bath_kinds: list = field(default_factory=lambda: ["drude_lorentz"])
    e_r_cm: float = None
    lambda0_cm: float = None
    coupling: float = None
    gamma_cm: float = None
    n: float = None
    omega_c_cm: float = None
    closed_form: bool = True
    # grid
    dt_ps: float = None
    grid_n: int = None
    pad: int = 4
    frame_cm: float = None
    window_halfwidth_cm: float = 60.0
    # job
    job: str = None
    t2_list_ps: list = field(default_factory=list)
    hbar_scan_list: list = field(default_factory=list)
    output_dir: str = "out"
    emit_svg: bool = False
    allow_divergent: bool = False
    horizon_ps: float = 50.0
    seed: int = 20260809
    threads: int = 1
    echo: str = ""


def _to_bool(raw: str, key: str, line: int) -> bool:
    if raw.lower() in ("true", "false"):
        return raw.lower() == "true"
    raise ConfigError(f"line {line}: key '{key}' expects true/false, got '{raw}'")


def _to_float(raw: str, key: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"line {line}: key '{key}' expects a number, got '{raw}'")


def _to_int(raw: str, key: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"line {line}: key '{key}' expects an integer, got '{raw}'")


def _to_float_list(raw: str, key: str, line: int) -> list:
    return [_to_float(tok.strip(), key, line) for tok in raw.split(",") if tok.strip()]


_SCHEMA = {
    ("oscillator", "omega0_cm"): ("omega0_cm", _to_float),
    ("oscillator", "delta_cm"): ("delta_cm", _to_float),
    ("oscillator", "mu"): ("mu", _to_float),
    ("oscillator", "temperature_K"): ("temperature_K", _to_float),
    ("bath", "kind"): ("bath_kinds", None),        # handled specially
    ("bath", "e_r_cm"): ("e_r_cm", _to_float),
    ("bath", "lambda0_cm"): ("lambda0_cm", _to_float),
    ("bath", "coupling"): ("coupling", _to_float),
    ("bath", "gamma_cm"): ("gamma_cm", _to_float),
    ("bath", "n"): ("n", _to_float),
    ("bath", "omega_c_cm"): ("omega_c_cm", _to_float),
    ("bath", "closed_form"): ("closed_form", _to_bool),
    ("grid", "dt_ps"): ("dt_ps", _to_float),
    ("grid", "n"): ("grid_n", _to_int),
    ("grid", "pad"): ("pad", _to_int),
    ("grid", "frame_cm"): ("frame_cm", _to_float),
    ("grid", "window_halfwidth_cm"): ("window_halfwidth_cm", _to_float),
    ("job", "job"): ("job", None),
    ("job", "t2_list_ps"): ("t2_list_ps", _to_float_list),
    ("job", "hbar_scan_list"): ("hbar_scan_list", _to_float_list),
    ("job", "output_dir"): ("output_dir", None),
    ("job", "emit_svg"): ("emit_svg", _to_bool),
    ("job", "allow_divergent"): ("allow_divergent", _to_bool),
    ("job", "horizon_ps"): ("horizon_ps", _to_float),
    ("job", "seed"): ("seed", _to_int),
    ("job", "threads"): ("threads", _to_int),
}

_REQUIRED = (("oscillator", "omega0_cm"), ("oscillator", "temperature_K"))


def _parse_bath_kind(raw: str, line: int) -> list:
    kinds = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        name, _, suffix = tok.partition(":")
        if name not in _BATH_KINDS:
            raise ConfigError(
                f"line {line}: unknown bath kind '{tok}' "
                f"(expected one of {', '.join(_BATH_KINDS)}, optionally ':n')")
        if suffix:
            if name != "power_exp_cutoff":
                raise ConfigError(f"line {line}: ':n' suffix only applies to "
                                  f"power_exp_cutoff, got '{tok}'")
            kinds.append((name, _to_float(suffix, "kind", line)))
        else:
            kinds.append((name, None))
    if not kinds:
        raise ConfigError(f"line {line}: empty bath kind list")
    return kinds


def parse_config(text: str) -> RunConfig:
    """Parse and validate configuration text into a RunConfig."""
    cfg = RunConfig(omega0_cm=None, temperature_K=None)
    cfg.echo = text
    section = None
    seen = set()
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("oscillator", "bath", "grid", "job"):
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got '{rawline.strip()}'")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if (section, key) not in _SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key '{key}' in section [{section}]")
        if (section, key) in seen:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        seen.add((section, key))
        attr, conv = _SCHEMA[(section, key)]
        if key == "kind":
            cfg.bath_kinds = _parse_bath_kind(raw, lineno)
        elif conv is None:
            setattr(cfg, attr, raw)
        else:
            setattr(cfg, attr, conv(raw, key, lineno))
    if ("bath", "kind") not in seen:
        cfg.bath_kinds = [("drude_lorentz", None)]
    _validate(cfg, seen)
    return cfg


def _validate(cfg: RunConfig, seen: set) -> None:
    for section, key in _REQUIRED:
        if (section, key) not in seen:
            raise ConfigError(f"missing required key '{key}' in section [{section}]")
    if not cfg.omega0_cm > 0.0:
        raise ConfigError("omega0_cm must be positive")
    if not cfg.temperature_K > 0.0:
        raise ConfigError("temperature_K must be positive")
    if cfg.job is not None and cfg.job not in JOBS:
        raise ConfigError(f"unknown job '{cfg.job}' (expected one of {', '.join(JOBS)})")

    explicit = [k for k in ("lambda0_cm", "coupling") if getattr(cfg, k) is not None]
    if cfg.e_r_cm is not None and explicit:
        raise ConfigError("mutually exclusive coupling keys given: 'e_r_cm' and "
                          f"'{explicit[0]}'")
    if cfg.e_r_cm is None and not explicit:
        raise ConfigError("bath coupling unspecified: give 'e_r_cm' or an explicit "
                          "'lambda0_cm' / 'coupling'")
    if explicit and len(cfg.bath_kinds) > 1:
        raise ConfigError("explicit coupling keys require a single bath kind; "
                          "use 'e_r_cm' for multi-bath runs")

    needs_power = any(name == "power_exp_cutoff" for name, _ in cfg.bath_kinds)
    bare_power = any(name == "power_exp_cutoff" and n is None
                     for name, n in cfg.bath_kinds)
    if bare_power and cfg.n is None:
        raise ConfigError("power_exp_cutoff without ':n' suffix requires key 'n'")
    if needs_power and cfg.omega_c_cm is None:
        raise ConfigError("power_exp_cutoff requires 'omega_c_cm'")
    if any(name == "drude_lorentz" for name, _ in cfg.bath_kinds) and cfg.gamma_cm is None:
        raise ConfigError("drude_lorentz requires 'gamma_cm'")
    if cfg.closed_form:
        for name, n in cfg.bath_kinds:
            n_eff = n if n is not None else cfg.n
            if name == "power_exp_cutoff" and not (
                    float(n_eff).is_integer() and int(n_eff) in (1, 2, 3)):
                raise ConfigError(
                    f"n = {n_eff:g}: closed-form kernels need integer n <= 3 "
                    "(set closed_form = false for the quadrature path)")
    if cfg.job == "twodir" and not cfg.t2_list_ps:
        raise ConfigError("job twodir requires a nonempty 't2_list_ps'")
    if cfg.job == "validate" and not cfg.hbar_scan_list:
        raise ConfigError("job validate requires a nonempty 'hbar_scan_list'")
    if any(h <= 0.0 for h in cfg.hbar_scan_list):
        raise ConfigError("hbar_scan_list entries must be positive")
    if any(t < 0.0 for t in cfg.t2_list_ps):
        raise ConfigError("t2_list_ps entries must be >= 0")
    if cfg.pad < 4:
        raise ConfigError("pad must be >= 4")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")


def build_models(cfg: RunConfig) -> list:
    """(label, SpectralDensity) pairs for every configured bath."""
    models = []
    for name, n_suffix in cfg.bath_kinds:
        if name == "drude_lorentz":
            if cfg.lambda0_cm is not None:
                model = SpectralDensity.drude_lorentz(cfg.lambda0_cm, cfg.gamma_cm)
            else:
                model = calibrate_coupling(cfg.e_r_cm, Kind.DRUDE_LORENTZ,
                                           gamma_cm=cfg.gamma_cm)
        else:
            n = n_suffix if n_suffix is not None else cfg.n
            if cfg.coupling is not None:
                model = SpectralDensity.power_exp_cutoff(n, cfg.coupling,
                                                         cfg.omega_c_cm)
            else:
                model = calibrate_coupling(cfg.e_r_cm, Kind.POWER_EXP_CUTOFF,
                                           n=n, omega_c_cm=cfg.omega_c_cm)
        models.append((model.label(), model))
    labels = [label for label, _ in models]
    if len(set(labels)) != len(labels):
        raise ConfigError(f"duplicate bath kinds in list: {labels}")
    return models
