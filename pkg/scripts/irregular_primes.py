"""List irregular primes and their indices, cross-checking the modular
Bernoulli computation against exact rationals below ``--exact-below``.

    python scripts/irregular_primes.py [--below 1000] [--exact-below 200]
"""

from __future__ import annotations

import argparse
import time

from bmcert.arith import irregular_indices_exact, is_irregular


def odd_primes(bound: int) -> list[int]:
    sieve = bytearray([1]) * bound
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [p for p in range(3, bound) if sieve[p]]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--below", type=int, default=1000)
    ap.add_argument("--exact-below", type=int, default=200)
    args = ap.parse_args()
    t = time.perf_counter()
    primes = odd_primes(args.below)
    irregular = 0
    disagreements = []
    for p in primes:
        irr, idx = is_irregular(p)
        if p < args.exact_below and idx != irregular_indices_exact(p):
            disagreements.append(p)
        if irr:
            irregular += 1
            print(f"{p:6d}  k = {idx}")
    print(f"{irregular} irregular among {len(primes)} odd primes below {args.below}")
    print(f"modular vs exact disagreements below {args.exact_below}: {disagreements or 'none'}")
    print(f"{time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
