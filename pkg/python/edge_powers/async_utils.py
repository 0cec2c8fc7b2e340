"""
Async utilities for fanning pure computations out to worker pools.

Homology sweeps and fuzz trials are CPU-bound and independent, so they run
in a ``concurrent.futures`` executor driven from a private event loop. The
loop always lives in its own thread, which keeps the helpers usable from
code that already runs inside an event loop (notebooks, pytest-asyncio).
"""

import asyncio
import concurrent.futures
from typing import Any, Callable, Coroutine, Iterable, List, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def run_async(coro: Coroutine[Any, Any, T]) -> T:
    """
    Execute an async coroutine from a synchronous context.

    Args:
        coro: The coroutine to execute

    Returns:
        The result of the coroutine
    """
    def _run_in_thread() -> T:
        loop = asyncio.new_event_loop()
        asyncio.set_event_loop(loop)
        try:
            return loop.run_until_complete(coro)
        finally:
            loop.close()

    with concurrent.futures.ThreadPoolExecutor(max_workers=1) as executor:
        future = executor.submit(_run_in_thread)
        return future.result()


async def gather_with_concurrency(limit: int, *coros: Coroutine[Any, Any, T]) -> List[T]:
    """
    Run coroutines with a concurrency limit using a semaphore.

    Args:
        limit: Maximum number of concurrent coroutines
        *coros: Coroutines to execute

    Returns:
        List of results in the same order as input coroutines
    """
    semaphore = asyncio.Semaphore(limit)

    async def limited_coro(coro: Coroutine[Any, Any, T]) -> T:
        async with semaphore:
            return await coro

    return list(await asyncio.gather(*(limited_coro(c) for c in coros)))


def map_concurrently(
    fn: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    processes: bool = True,
) -> List[R]:
    """
    Applies ``fn`` to every item, preserving input order.

    With ``workers <= 1`` everything runs inline. Otherwise items are
    dispatched to a process pool (or a thread pool when ``processes`` is
    False), so ``fn`` must be picklable: a module-level function or a
    ``functools.partial`` of one.

    Args:
        fn: Pure function of one argument.
        items: Inputs.
        workers: Pool size.
        processes: Use processes instead of threads.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]

    pool_cls = (
        concurrent.futures.ProcessPoolExecutor if processes
        else concurrent.futures.ThreadPoolExecutor
    )

    async def _dispatch(pool: concurrent.futures.Executor) -> List[R]:
        loop = asyncio.get_running_loop()
        coros = [_submit(loop, pool, fn, item) for item in items]
        return await gather_with_concurrency(workers, *coros)

    with pool_cls(max_workers=workers) as pool:
        return run_async(_dispatch(pool))


async def _submit(
    loop: asyncio.AbstractEventLoop,
    pool: concurrent.futures.Executor,
    fn: Callable[[T], R],
    item: T,
) -> R:
    return await loop.run_in_executor(pool, fn, item)
