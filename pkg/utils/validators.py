"""Input validation utilities for command-line arguments."""
import itertools
import re
from typing import List, Sequence

from pydantic import ValidationError

from config.constants import METHOD_FOSTER_FLOW, METHOD_SPECTRAL
from utils.errors import InvalidArgumentError
from utils.sbm import SbmParams

VALID_METHODS = (METHOD_FOSTER_FLOW, METHOD_SPECTRAL)
_SEED_RANGE = re.compile(r"^(-?\d+):(-?\d+)$")


def validate_methods(methods: Sequence[str]) -> List[str]:
    """
    Check method names, dropping duplicates but keeping order.

    Raises:
        InvalidArgumentError: on an empty list or an unknown method
    """
    if not methods:
        raise InvalidArgumentError("at least one method is required")
    unknown = [m for m in methods if m not in VALID_METHODS]
    if unknown:
        raise InvalidArgumentError(f"unknown method(s) {unknown}; choose from {list(VALID_METHODS)}")
    return list(dict.fromkeys(methods))


def parse_seeds(text: str) -> List[int]:
    """
    Parse a seed list: either ``start:stop`` (stop exclusive) or
    comma-separated integers.

    Raises:
        InvalidArgumentError: on malformed input or an empty range
    """
    text = text.strip()
    match = _SEED_RANGE.match(text)
    if match:
        start, stop = int(match.group(1)), int(match.group(2))
        if stop <= start:
            raise InvalidArgumentError(f"empty seed range {text!r}")
        return list(range(start, stop))
    try:
        seeds = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InvalidArgumentError(f"invalid seed list {text!r}") from None
    if not seeds:
        raise InvalidArgumentError("seed list is empty")
    return seeds


def sbm_params(n: int, k: int, p_in: float, p_out: float, seed: int) -> SbmParams:
    """
    Build SbmParams, turning pydantic's error into an argument error.

    Raises:
        InvalidArgumentError: if any value is out of range
    """
    try:
        return SbmParams(n=n, k=k, p_in=p_in, p_out=p_out, seed=seed)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'params'}: {err['msg']}" for err in e.errors()
        )
        raise InvalidArgumentError(f"invalid SBM parameters ({problems})") from None


def build_param_grid(
    ns: Sequence[int],
    ks: Sequence[int],
    p_ins: Sequence[float],
    p_outs: Sequence[float],
    seed: int,
) -> List[SbmParams]:
    """Cartesian product of the given values, in (n, k, p_in, p_out) order."""
    return [
        sbm_params(n, k, p_in, p_out, seed)
        for n, k, p_in, p_out in itertools.product(ns, ks, p_ins, p_outs)
    ]
