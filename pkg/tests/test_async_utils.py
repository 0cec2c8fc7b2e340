"""Tests for async_utils.py: run_async, gather_with_concurrency and map_concurrently.

run_async must work both with no event loop and from inside a running one.
"""
import asyncio
import pytest
from edge_powers.async_utils import gather_with_concurrency, map_concurrently, run_async


def square(x):
    return x * x


def test_run_async_simple():
    """Runs a coroutine from a sync context when no loop is active."""
    async def add(a, b):
        return a + b

    assert run_async(add(2, 3)) == 5


def test_run_async_exception():
    async def fail():
        raise ValueError("boom")

    with pytest.raises(ValueError, match="boom"):
        run_async(fail())


@pytest.mark.asyncio
async def test_run_async_inside_existing_loop():
    """Still works when the caller already runs an event loop."""
    async def double(x):
        return x * 2

    assert run_async(double(21)) == 42


@pytest.mark.asyncio
async def test_gather_with_concurrency_basic():
    """Results are returned in input order."""
    async def identity(x):
        return x

    results = await gather_with_concurrency(3, identity(1), identity(2), identity(3))
    assert results == [1, 2, 3]


@pytest.mark.asyncio
async def test_gather_with_concurrency_limits():
    max_concurrent = 0
    current = 0

    async def track():
        nonlocal max_concurrent, current
        current += 1
        max_concurrent = max(max_concurrent, current)
        await asyncio.sleep(0.01)
        current -= 1

    await gather_with_concurrency(2, track(), track(), track(), track())
    assert max_concurrent <= 2


def test_map_concurrently_inline():
    assert map_concurrently(square, [3, 1, 2]) == [9, 1, 4]
    assert map_concurrently(square, []) == []


def test_map_concurrently_threads_keep_order():
    assert map_concurrently(square, range(10), workers=3, processes=False) == [x * x for x in range(10)]


def test_map_concurrently_processes_keep_order():
    assert map_concurrently(square, range(6), workers=2) == [0, 1, 4, 9, 16, 25]


def test_map_concurrently_propagates_errors():
    def fail(x):
        raise ValueError(f"item {x}")

    with pytest.raises(ValueError, match="item"):
        map_concurrently(fail, [1, 2], workers=2, processes=False)
