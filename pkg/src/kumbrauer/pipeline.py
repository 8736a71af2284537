"""End-to-end bound for Br(X)/Br_0(X) of the Kummer surface of Jac(C)."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds_engine as be
from . import directed as dr
from .cohomology import algebraic_bound, h1_table_fixture
from .curve_model import parse_curve, format_curve
from .frobenius_rank import certify_rank
from .galois_s6 import (PermGroup, candidate_groups, find_class, frobenius_cycle_types, parse_cycles,
                        subgroup_classes)

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "degree": 1,
    "prime_budget": 200,
    "galois": "sampled",
    "galois_budget": None,
    "rank_lower_bound": 1,
    "height": None,
    "tau_imdet": None,
    "tau_imag": None,
    "abs_j10": None,
}


def load_config(path):
    text = open(path, "rb").read()
    if str(path).endswith(".toml"):
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        try:
            return tomllib.loads(text.decode())
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"bad TOML config: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"bad JSON config: {exc}") from exc


def normalize_config(config):
    cfg = dict(DEFAULTS)
    unknown = set(config) - set(DEFAULTS) - {"curve", "format", "strict"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg.update({k: v for k, v in config.items() if v is not None})
    if "curve" not in cfg:
        raise ConfigError("config needs a curve")
    try:
        cfg["degree"] = int(cfg["degree"])
        cfg["prime_budget"] = int(cfg["prime_budget"])
        cfg["rank_lower_bound"] = int(cfg["rank_lower_bound"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if cfg["galois_budget"] is None:
        cfg["galois_budget"] = cfg["prime_budget"]
    for key in ("height", "tau_imdet", "abs_j10"):
        if cfg[key] is not None:
            if isinstance(cfg[key], float):
                raise ConfigError(f"{key}: give exact decimals as strings")
            try:
                cfg[key] = Fraction(str(cfg[key]))
            except ValueError as exc:
                raise ConfigError(f"{key}: {exc}") from exc
    if cfg["tau_imag"] is not None and cfg["tau_imdet"] is None:
        cfg["tau_imdet"] = be.imag_det(cfg["tau_imag"])
    if cfg["height"] is None and (cfg["tau_imdet"] is None or cfg["abs_j10"] is None):
        raise ConfigError("need either a height bound or both tau_imdet and abs_j10")
    g = cfg["galois"]
    if not (g == "sampled" or (isinstance(g, str) and g.startswith("exact:"))):
        raise ConfigError("galois must be 'sampled' or 'exact:<perm>;<perm>...'")
    return cfg


@dataclass
class BoundReport:
    curve: str
    rank: object
    galois_mode: str
    algebraic_bound: int
    height_upper: str
    M: object
    transcendental_bound: object
    total_bound: object
    scenarios: list = field(default_factory=list)
    provenance: list = field(default_factory=list)

    def as_dict(self):
        def mag(x):
            return x.as_dict() if x is not None else None
        return {
            "schema_version": SCHEMA_VERSION,
            "curve": self.curve,
            "rank": self.rank.as_dict(),
            "galois_mode": self.galois_mode,
            "algebraic_bound": self.algebraic_bound,
            "height_upper": self.height_upper,
            "M": mag(self.M),
            "transcendental_bound": mag(self.transcendental_bound),
            "total_bound": mag(self.total_bound),
            "scenarios": self.scenarios,
            "provenance": self.provenance,
        }


def _galois_candidates(C, cfg, trail):
    classes = subgroup_classes()
    mode = cfg["galois"]
    if mode.startswith("exact:"):
        gens = tuple(parse_cycles(s) for s in mode[len("exact:"):].split(";") if s.strip())
        idx = [find_class(PermGroup(6, gens), classes)]
        trail.append({"step": "galois-group", "formula": "exact generators",
                      "inputs": {"generators": mode[len("exact:"):]},
                      "outputs": {"class": idx[0], "order": classes[idx[0]].order,
                                  "label": classes[idx[0]].label}})
        return "exact", idx
    observed = frobenius_cycle_types(C, cfg["galois_budget"])
    if observed:
        keep = candidate_groups(observed, classes)
        idx = [i for i, G in enumerate(classes) if G in keep]
    else:
        idx = list(range(len(classes)))
    trail.append({"step": "galois-group", "formula": "Frobenius cycle types (Chebotarev)",
                  "inputs": {"prime_budget": cfg["galois_budget"]},
                  "outputs": {"cycle_types": sorted(list(t) for t in observed), "candidate_classes": idx}})
    return "sampled", idx


def _scenario(rank, h, degree, algebraic, trail):
    """Transcendental bound for one admissible geometric rank of NS(Jac C)."""
    caveats = []
    if rank == 1:
        ctx = be.BoundContext(degree, h, 1, 1)
        M = be.faltings_M(ctx)
        T = be.transcendental_bound_rank1(M)
        trail.append({"step": "faltings-constant", "formula": "M <= 2^4664 c1^16 c2^256 (...)^512",
                      "inputs": {"degree": degree, "h": dr.decimal_string(h), "r": 1, "rbar": 1},
                      "outputs": {"M": M.as_dict()}})
        trail.append({"step": "transcendental", "formula": "4 prod_{l<C} C^50 < 4 C^(50 C), C = M",
                      "inputs": {"C": M.as_dict()}, "outputs": {"bound": T.as_dict()},
                      "note": "per-prime exponent 50, the coarse count used for geometric rank 1"})
        total = T * algebraic
        return {"rank": 1, "M": M, "transcendental": T, "algebraic": algebraic, "total": total,
                "caveats": caveats}
    options = []
    if rank in (2, 3):
        rbar = 2 if rank == 2 else 4
        for r in (1, 2, 4):
            if r <= rbar:
                M = be.faltings_M(be.BoundContext(degree, h, r, rbar))
                options.append((f"simple, r={r}, rbar={rbar}", M, be.transcendental_bound_rank1(M)))
        options.append(("isogenous to a product", None, be.product_case_total_bound(h, degree)))
        caveats.append("per-prime exponent 50 extrapolated beyond geometric rank 1")
    else:
        options.append(("E x E with CM", None, be.rank4_total_bound(h, degree)))
    label, M, T = max(options, key=lambda o: o[2].log10)
    trail.append({"step": f"transcendental-rank-{rank}", "formula": label,
                  "inputs": {"degree": degree, "h": dr.decimal_string(h)},
                  "outputs": {"bound": T.as_dict(), "options": [o[0] for o in options]}})
    caveats.append("algebraic part not computed for geometric rank above 1")
    return {"rank": rank, "M": M, "transcendental": T, "algebraic": None, "total": None, "caveats": caveats}


def run_pipeline(config):
    cfg = normalize_config(config)
    C = parse_curve(cfg["curve"])
    trail = [{"step": "curve", "formula": "y^2 + G y = F, smooth model",
              "inputs": {"text": cfg["curve"]},
              "outputs": {"canonical": format_curve(C), "disc6": str(C.discriminant())}}]

    cert = certify_rank(C, cfg["prime_budget"], cfg["rank_lower_bound"])
    trail.append({"step": "rank-certificate", "formula": "Tate bound and Artin-Tate classes",
                  "inputs": {"prime_budget": cfg["prime_budget"], "lower_bound": cfg["rank_lower_bound"]},
                  "outputs": {**cert.as_dict(), "primes": [d.as_dict() for d in cert.records]}})

    mode, idx = _galois_candidates(C, cfg, trail)
    table = h1_table_fixture()
    alg = algebraic_bound(idx, table)
    trail.append({"step": "algebraic", "formula": "max |H^1(H, NS)| over candidate classes",
                  "inputs": {"candidate_classes": idx},
                  "outputs": {"bound": alg, "h1": {str(i): list(table[i].invariant_factors) for i in idx}}})

    if cfg["height"] is not None:
        h = dr.number(cfg["height"], dr.PREC, "up")
        trail.append({"step": "height", "formula": "user-supplied upper bound",
                      "inputs": {"height": str(cfg["height"])}, "outputs": {"h": dr.decimal_string(h)}})
    else:
        h = be.height_upper(C, cfg["tau_imdet"], cfg["abs_j10"])
        trail.append({"step": "height",
                      "formula": "-ln(2 pi^2) + ln(2^-12 Disc6)/10 - ln(2^(-1/5) |J10|^(1/10) det(Im tau)^(1/2))",
                      "inputs": {"tau_imdet": str(cfg["tau_imdet"]), "abs_j10": str(cfg["abs_j10"])},
                      "outputs": {"h": dr.decimal_string(h)}})

    ranks = [cert.rank] if cert.certified else list(range(cert.lower, cert.upper + 1))
    scenarios = [_scenario(r, h, cfg["degree"], alg, trail) for r in ranks]
    worst = max(scenarios, key=lambda s: s["transcendental"].log10)
    totals = [s["total"] for s in scenarios]
    total = max(totals, key=lambda t: t.log10) if all(t is not None for t in totals) else None
    rank1 = next((s for s in scenarios if s["rank"] == 1), None)
    report = BoundReport(
        curve=format_curve(C),
        rank=cert,
        galois_mode=mode,
        algebraic_bound=alg,
        height_upper=dr.decimal_string(h),
        M=rank1["M"] if rank1 else worst["M"],
        transcendental_bound=worst["transcendental"],
        total_bound=total,
        scenarios=[{"rank": s["rank"], "transcendental": s["transcendental"].as_dict(),
                    "algebraic": s["algebraic"],
                    "total": s["total"].as_dict() if s["total"] is not None else None,
                    "caveats": s["caveats"]} for s in scenarios],
        provenance=trail,
    )
    return report


def emit_report(report, fmt="json"):
    data = report.as_dict()
    if fmt == "json":
        return (json.dumps(data, indent=2, sort_keys=True) + "\n").encode()
    if fmt != "text":
        raise ValueError("format must be json or text")
    lines = [f"Curve: {data['curve']}"]
    r = data["rank"]
    lines.append(f"Geometric NS rank of the Jacobian: {r['rank']} ({r['kind']}; "
                 f"bounds {r['lower']}..{r['upper']}; witnesses {r['witnesses']})")
    lines.append(f"Galois mode: {data['galois_mode']}; |Br_1(X)/Br_0(X)| <= {data['algebraic_bound']}")
    lines.append(f"Faltings height h(A) <= {data['height_upper']}")
    if data["M"]:
        lines.append(f"M <= {data['M']['value']}")
    lines.append(f"Transcendental part <= {data['transcendental_bound']['value']}")
    if data["total_bound"]:
        lines.append(f"|Br(X)/Br_0(X)| <= {data['total_bound']['value']}")
    else:
        lines.append("|Br(X)/Br_0(X)|: no total bound (rank not certified; see scenarios)")
    lines.append("")
    lines.append("Provenance:")
    for step in data["provenance"]:
        lines.append(f"  [{step['step']}] {step['formula']}")
    return ("\n".join(lines) + "\n").encode()
