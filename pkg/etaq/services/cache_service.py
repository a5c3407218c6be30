"""JSON-lines cache of C-series coefficients, keyed by (spec, field, limit)."""
import json
import logging
import os
import tempfile
from typing import List, Optional, Tuple

from etaq.models.cache import CacheHeader, CoefficientRecord
from etaq.services.qseries import EtaSpec, c_coefficients

logger = logging.getLogger("cache_service")


def cache_key(spec: EtaSpec) -> str:
    """File stem for a spec, e.g. "1_m1__3_3__4_2"."""
    return "__".join(f"{delta}_{r}".replace("-", "m") for delta, r in spec.factors)


def cache_path(spec: EtaSpec, limit: int, cache_dir: str) -> str:
    return os.path.join(cache_dir, f"{cache_key(spec)}__L{limit}.jsonl")


def write_cache(spec: EtaSpec, coeffs: List[int], cache_dir: str) -> str:
    """Write header plus one record per coefficient; the file appears atomically."""
    os.makedirs(cache_dir, exist_ok=True)
    limit = len(coeffs) - 1
    path = cache_path(spec, limit, cache_dir)
    header = CacheHeader(spec=str(spec), limit=limit, offset24=spec.offset24)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(header.model_dump_json() + "\n")
            for n, c in enumerate(coeffs):
                fh.write(CoefficientRecord.from_value(24 * n + spec.offset24, c).model_dump_json() + "\n")
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    logger.info(f"Cached {limit + 1} coefficients of {spec} at {path}")
    return path


def read_cache(path: str) -> Tuple[CacheHeader, List[int]]:
    """(header, coefficients) of a cache file."""
    with open(path) as fh:
        header = CacheHeader(**json.loads(fh.readline()))
        records = [CoefficientRecord(**json.loads(line)) for line in fh if line.strip()]
    if len(records) != header.limit + 1:
        raise ValueError(f"cache file {path} is truncated")
    for n, record in enumerate(records):
        if record.k24 != 24 * n + header.offset24:
            raise ValueError(f"cache file {path} has k24={record.k24} where {24 * n + header.offset24} was expected")
    coeffs = [record.to_int() for record in records]
    return header, coeffs


def find_cached(spec: EtaSpec, limit: int, cache_dir: str) -> Optional[str]:
    """Smallest cache file for spec that covers limit."""
    if not os.path.isdir(cache_dir):
        return None
    prefix = cache_key(spec) + "__L"
    best = None
    for name in os.listdir(cache_dir):
        if not (name.startswith(prefix) and name.endswith(".jsonl")):
            continue
        try:
            stored = int(name[len(prefix):-len(".jsonl")])
        except ValueError:
            continue
        if stored >= limit and (best is None or stored < best):
            best = stored
    return None if best is None else cache_path(spec, best, cache_dir)


def cached_coefficients(spec: EtaSpec, limit: int, cache_dir: Optional[str]) -> List[int]:
    """C(0..limit), served from the cache when possible and stored after a fresh build."""
    if cache_dir is None:
        return c_coefficients(spec, limit)
    path = find_cached(spec, limit, cache_dir)
    if path is not None:
        try:
            _, coeffs = read_cache(path)
            logger.debug(f"Cache hit for {spec} at {path}")
            return coeffs[: limit + 1]
        except (ValueError, OSError) as e:
            logger.warning(f"Ignoring unreadable cache file {path}: {e}")
    coeffs = c_coefficients(spec, limit)
    write_cache(spec, coeffs, cache_dir)
    return coeffs


def list_cache(cache_dir: str) -> List[CacheHeader]:
    if not os.path.isdir(cache_dir):
        return []
    headers = []
    for name in sorted(os.listdir(cache_dir)):
        if not name.endswith(".jsonl"):
            continue
        with open(os.path.join(cache_dir, name)) as fh:
            try:
                headers.append(CacheHeader(**json.loads(fh.readline())))
            except ValueError as e:
                logger.warning(f"Skipping {name}: {e}")
    return headers


def clear_cache(cache_dir: str) -> int:
    """Delete every cache file; returns how many were removed."""
    if not os.path.isdir(cache_dir):
        return 0
    removed = 0
    for name in os.listdir(cache_dir):
        if name.endswith(".jsonl") or name.endswith(".tmp"):
            os.remove(os.path.join(cache_dir, name))
            removed += 1
    logger.info(f"Removed {removed} cache files from {cache_dir}")
    return removed
