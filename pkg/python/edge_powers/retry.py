import hashlib
from typing import Iterator, Tuple, Type

from tenacity import AttemptManager, Retrying, retry_if_exception_type, stop_after_attempt


def derive_seed(seed: int, attempt: int) -> int:
    """Deterministic 63-bit seed for the given attempt of a seeded task."""
    digest = hashlib.sha256(f"{seed}:{attempt}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def retry_with_derived_seeds(
    seed: int,
    attempts: int,
    retry_on: Tuple[Type[BaseException], ...] = (ValueError,),
) -> Iterator[Tuple[AttemptManager, int]]:
    """
    Retry loop that hands every attempt a fresh derived seed.

    Usage::

        for attempt, attempt_seed in retry_with_derived_seeds(seed, 50):
            with attempt:
                return build(attempt_seed)

    Args:
        seed: Base seed.
        attempts: Attempts before the last exception is re-raised.
        retry_on: Exception types that trigger another attempt.

    Raises:
        The last exception once all attempts are exhausted.
    """
    retrying = Retrying(
        stop=stop_after_attempt(attempts),
        retry=retry_if_exception_type(retry_on),
        reraise=True,
    )
    for attempt in retrying:
        yield attempt, derive_seed(seed, attempt.retry_state.attempt_number)
