import pytest


def naive_product(factors, P):
    """Multiply polynomials given as {exponent: coeff} dicts, truncated at q^P."""
    out = [0] * (P + 1)
    out[0] = 1
    for f in factors:
        new = [0] * (P + 1)
        for i, a in enumerate(out):
            if a:
                for e, c in f.items():
                    if i + e <= P:
                        new[i + e] += a * c
        out = new
    return out


def partitions(n, max_part=None):
    """All partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def legendre_by_squares(a, p):
    """(a/p) for an odd prime p from the set of squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1


@pytest.fixture
def small_primes():
    return [p for p in range(2, 60) if all(p % d for d in range(2, p))]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
