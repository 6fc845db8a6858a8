"""Orchestration: run the full construction from a config file.

A run harvests a ConstructionInstance (window product, buckets, Q-split,
both prime families, coprimality ledger), serializes it for resume, then
reduces each family mod M = L1*L2*k1*k2*nu, enumerates product-one
subsets, assembles n = n1*n2 from one witness per family, and certifies
the result with K equal to the configured nu.

Output is deterministic: a given config yields byte-identical instance and
certificate documents.  Stage timings are written to a separate sidecar
precisely so they stay out of the deterministic documents.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from dataclasses import dataclass, field, fields as dc_fields
from pathlib import Path

from . import arith, korselt, zerosum
from .construction import (
    ConstructionConfig,
    ConstructionInstance,
    build_J,
    populate_R,
    search_P,
    select_j0,
    split_Q,
    verify_pairwise_gcd,
    squarefree_product,
)
from .errors import (
    ConfigError,
    InternalConsistencyError,
    SearchExhaustedError,
    StageError,
)

__all__ = [
    "RunConfig",
    "CarmichaelBatch",
    "parse_config",
    "render_config",
    "harvest_instance",
    "complete_batch",
    "run_construction",
    "independent_recheck",
    "write_outputs",
]


@dataclass(frozen=True)
class RunConfig:
    """A ConstructionConfig plus the zero-sum and output knobs of one run."""

    construction: ConstructionConfig
    len_min: int = 1
    len_max: int = 0  # 0 means |P_i|
    witness_cap: int = 8
    node_cap: int = 2_000_000
    state_cap: int = 1_000_000
    table_cap: int = 1_048_576
    target_count: int = 1
    force_zero_sum: bool = False
    fermat_bases: int = 200
    seed: int = 0

    def __post_init__(self):
        if min(self.len_min, self.witness_cap, self.node_cap, self.state_cap,
               self.table_cap, self.target_count, self.fermat_bases) < 1:
            raise ConfigError("every cap must be positive")
        if self.len_max < 0 or self.seed < 0:
            raise ConfigError("len_max and seed must be >= 0")


# Config file schema: flat "key = value" lines, '#' comments, no sections.
_CONSTRUCTION_KEYS = {
    "z": int,
    "nu": int,
    "omega_g": int,
    "omega_d": int,
    "j_cap": int,
    "k_cap": int,
    "q_subset_size": int,
    "exponent_a": float,
    "min_count": int,
    "factor_digits": int,
}
_RUN_KEYS = {
    "len_min": int,
    "len_max": int,
    "witness_cap": int,
    "node_cap": int,
    "state_cap": int,
    "table_cap": int,
    "target_count": int,
    "force_zero_sum": lambda s: s.lower() in ("1", "true", "yes"),
    "fermat_bases": int,
    "seed": int,
}


def parse_config(text: str) -> RunConfig:
    """Parse a flat key = value document; unknown keys are rejected."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    unknown = set(raw) - set(_CONSTRUCTION_KEYS) - set(_RUN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for required in ("z", "nu"):
        if required not in raw:
            raise ConfigError(f"missing required key {required!r}")
    try:
        ckw = {k: conv(raw[k]) for k, conv in _CONSTRUCTION_KEYS.items() if k in raw}
        rkw = {k: conv(raw[k]) for k, conv in _RUN_KEYS.items() if k in raw}
    except ValueError as exc:
        raise ConfigError(f"bad value in config: {exc}") from exc
    return RunConfig(construction=ConstructionConfig(**ckw), **rkw)


def render_config(rc: RunConfig) -> str:
    """Canonical text form of a RunConfig (round-trips through parse_config)."""
    lines = []
    for f in dc_fields(ConstructionConfig):
        lines.append(f"{f.name} = {getattr(rc.construction, f.name)}")
    for f in dc_fields(RunConfig):
        if f.name == "construction":
            continue
        lines.append(f"{f.name} = {getattr(rc, f.name)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class CarmichaelBatch:
    """One run's harvest, witnesses, and certified outputs."""

    instance: ConstructionInstance
    n1_witness: zerosum.ZeroSumWitness
    n2_witness: zerosum.ZeroSumWitness
    pairs: tuple[tuple[zerosum.ZeroSumWitness, zerosum.ZeroSumWitness], ...]
    certificates: tuple[korselt.CarmichaelCertificate, ...]
    timings: dict[str, float] = field(default_factory=dict)

    def records(self) -> list[str]:
        """One JSON document per certificate, in a fixed field order."""
        fp = instance_fingerprint(self.instance)
        out = []
        for cert in self.certificates:
            out.append(
                json.dumps(
                    {
                        "n": str(cert.n),
                        "factors": [p for p, _ in cert.factors.factors],
                        "k_invariant": cert.k_invariant,
                        "nu": self.instance.config.nu,
                        "instance": fp,
                    },
                    separators=(",", ":"),
                )
            )
        return out


def instance_fingerprint(instance: ConstructionInstance) -> str:
    return "sha256:" + hashlib.sha256(instance.serialize().encode()).hexdigest()


def harvest_instance(cc: ConstructionConfig, timings: dict[str, float] | None = None) -> ConstructionInstance:
    """Run the harvesting stages and return a verified instance."""
    clock = time.perf_counter
    t = clock()

    def lap(name):
        nonlocal t
        if timings is not None:
            now = clock()
            timings[name] = now - t
            t = now

    j_product = build_J(cc.z)
    lap("build_J")
    rmap = populate_R(j_product, cc.resolved_omega_g, cc.resolved_j_cap)
    lap("populate_R")
    if not rmap.buckets:
        raise StageError("bucket", "no residue bucket produced any prime", misses=len(rmap.misses))
    j0, bucket = select_j0(rmap)
    try:
        q1, q2 = split_Q(bucket, cc.q_subset_size)
    except SearchExhaustedError as exc:
        raise StageError("bucket", str(exc), **exc.stats) from exc
    lap("select_split")
    l1, l2 = squarefree_product(q1), squarefree_product(q2)
    try:
        k1, p1 = search_P(l1, l2, cc.nu, cc.omega_d, cc.k_cap, cc.min_count)
    except SearchExhaustedError as exc:
        raise StageError("family-1", str(exc), **exc.stats) from exc
    lap("search_P1")
    try:
        k2, p2 = search_P(l2, l1, cc.nu, cc.omega_d, cc.k_cap, cc.min_count, k1=k1)
    except SearchExhaustedError as exc:
        raise StageError("family-2", str(exc), **exc.stats) from exc
    lap("search_P2")
    ok, bad = verify_pairwise_gcd(p1, p2, cc.nu)
    if not ok:
        raise InternalConsistencyError(f"pairwise gcd check failed at {bad}")
    instance = ConstructionInstance(
        config=cc, j_product=j_product, j0=j0, q1=q1, q2=q2,
        l1=l1, l2=l2, k1=k1, k2=k2, p1=p1, p2=p2,
    )
    instance.verify()
    lap("verify_ledger")
    return instance


def _family_witnesses(instance: ConstructionInstance, rc: RunConfig, which: int):
    """Product-one subsets of one family mod M, or a stage error."""
    cc = instance.config
    family = instance.p1 if which == 1 else instance.p2
    m_value = instance.l1.value * instance.l2.value * instance.k1 * instance.k2 * cc.nu
    bound_log = _modulus_bound_log(instance)
    # Guard: below the guaranteed-witness threshold the search may honestly
    # come up empty; the error then reports both sides of the comparison.
    threshold_known = bound_log < math.log(2**62)
    threshold = 1 + math.ceil(math.exp(bound_log)) if threshold_known else None
    primes = [p for p, _ in family]
    if any(math.gcd(p, m_value) != 1 for p in primes):
        raise StageError(f"zero-sum-{which}", "a family prime divides the modulus")
    bound_text = f"= {threshold}" if threshold is not None else f"~ exp({bound_log:.1f})"
    if threshold is None or len(primes) < threshold:
        if not rc.force_zero_sum:
            raise StageError(
                f"zero-sum-{which}",
                f"insufficient primes: family size {len(primes)} "
                f"< 1 + ceil(zero-sum bound) {bound_text}",
                family_size=len(primes),
                threshold=threshold,
                bound_log=bound_log,
            )
    len_max = rc.len_max if rc.len_max else len(primes)
    try:
        witnesses = zerosum.enumerate_product_one_subsets(
            [p % m_value for p in primes],
            m_value,
            len_min=rc.len_min,
            len_max=len_max,
            count_cap=rc.witness_cap,
            node_cap=rc.node_cap,
        )
    except SearchExhaustedError as exc:
        raise StageError(
            f"zero-sum-{which}", f"search budget exhausted: {exc}", **exc.stats
        ) from exc
    if not witnesses:
        raise StageError(
            f"zero-sum-{which}",
            f"no product-one subset in a family of {len(primes)} "
            f"(guaranteed-witness threshold {bound_text})",
            family_size=len(primes),
            threshold=threshold,
            bound_log=bound_log,
        )
    return witnesses


def _modulus_bound_log(instance: ConstructionInstance) -> float:
    parts: dict[int, int] = {q: 1 for q in instance.q1 + instance.q2}
    for k in (instance.k1, instance.k2, instance.config.nu):
        for p, e in arith.factorize(k).factors:
            parts[p] = parts.get(p, 0) + e
    return zerosum.davenport_upper_bound_log(arith.FactoredInteger.from_factor_map(parts))


def complete_batch(
    instance: ConstructionInstance,
    rc: RunConfig,
    timings: dict[str, float] | None = None,
) -> CarmichaelBatch:
    """Zero-sum, assembly, and certification stages for a harvested instance."""
    clock = time.perf_counter
    t = clock()

    def lap(name):
        nonlocal t
        if timings is not None:
            now = clock()
            timings[name] = now - t
            t = now

    cc = instance.config
    w1s = _family_witnesses(instance, rc, 1)
    w2s = _family_witnesses(instance, rc, 2)
    lap("zero_sum")

    p1_primes = [p for p, _ in instance.p1]
    p2_primes = [p for p, _ in instance.p2]
    certificates = []
    pairs = []
    for w1 in w1s:
        for w2 in w2s:
            s1 = [p1_primes[i] for i in w1.indices]
            s2 = [p2_primes[i] for i in w2.indices]
            if len(s1) + len(s2) < 3 or set(s1) & set(s2):
                continue
            n1 = math.prod(s1)
            n2 = math.prod(s2)
            n = n1 * n2
            cert = korselt.is_carmichael(n, effort_digits=cc.factor_digits)
            if not cert or cert.k_invariant != cc.nu:
                raise InternalConsistencyError(
                    f"assembled n = {n} failed certification despite a valid ledger"
                )
            independent_recheck(n, cc.nu, bases=rc.fermat_bases, seed=rc.seed,
                                effort_digits=cc.factor_digits)
            certificates.append(cert)
            pairs.append((w1, w2))
            if len(certificates) >= rc.target_count:
                break
        if len(certificates) >= rc.target_count:
            break
    lap("certify")
    if len(certificates) < rc.target_count:
        raise StageError(
            "assembly",
            f"only {len(certificates)} of {rc.target_count} certificates assembled",
            assembled=len(certificates),
        )
    return CarmichaelBatch(
        instance=instance,
        n1_witness=pairs[0][0],
        n2_witness=pairs[0][1],
        pairs=tuple(pairs),
        certificates=tuple(certificates),
        timings=dict(timings or {}),
    )


def run_construction(rc: RunConfig) -> CarmichaelBatch:
    """Full pipeline: harvest, zero-sum, assemble, certify."""
    timings: dict[str, float] = {}
    instance = harvest_instance(rc.construction, timings)
    return complete_batch(instance, rc, timings)


def independent_recheck(
    n: int,
    nu: int,
    bases: int = 200,
    seed: int = 0,
    effort_digits: int | None = None,
) -> None:
    """Re-verify a certified n from scratch.

    Fresh factorization through the Korselt conditions, the stated number of
    seeded random Fermat bases, and the K-invariant check.  Raises
    InternalConsistencyError on any failure.
    """
    verdict = korselt.is_carmichael(n, effort_digits=effort_digits)
    if not verdict:
        raise InternalConsistencyError(f"recheck rejected {n}: {verdict.describe()}")
    if verdict.k_invariant != nu:
        raise InternalConsistencyError(
            f"recheck found K = {verdict.k_invariant}, expected {nu}"
        )
    if not korselt.fermat_probe(n, bases=bases, seed=seed):
        raise InternalConsistencyError(f"a Fermat base rejected {n}")


def write_outputs(workdir: str | Path, batch: CarmichaelBatch) -> dict[str, Path]:
    """Write certificates.jsonl and timings.json under workdir.

    The certificate document is deterministic for a given config; timings
    are live measurements and live in their own sidecar.
    """
    wd = Path(workdir)
    wd.mkdir(parents=True, exist_ok=True)
    cert_path = wd / "certificates.jsonl"
    cert_path.write_text("".join(line + "\n" for line in batch.records()))
    timing_path = wd / "timings.json"
    timing_path.write_text(json.dumps(batch.timings, indent=2) + "\n")
    return {"certificates": cert_path, "timings": timing_path}
