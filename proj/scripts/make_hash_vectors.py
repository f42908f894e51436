#!/usr/bin/env python3
"""Regenerate the golden hash vectors under data/.

The values are produced with an implementation that shares nothing with the
C++ library: hashlib's MD5 plus Python big-integer arithmetic.  Each output
line is `hex_input<TAB>hex_hash`.  Inputs are hex-encoded byte strings (empty
for the empty input); hash values are 32 lowercase hex digits, big-endian,
already reduced modulo N = 2**128 - 159.
"""

import hashlib
import os
import random

N = 2**128 - 159


def hash_bytes(data: bytes) -> int:
    return int.from_bytes(hashlib.md5(data).digest(), "big") % N


def rehash(h: int) -> int:
    assert 0 <= h < N
    inner = hash_bytes(h.to_bytes(16, "big"))
    null = hash_bytes((0).to_bytes(16, "big"))
    return (inner + (N - null)) % N


def main() -> None:
    here = os.path.dirname(os.path.abspath(__file__))
    data = os.path.join(here, "..", "data")
    os.makedirs(data, exist_ok=True)

    inputs = [
        b"",
        b"\x00",
        b"\xff",
        b"a",
        b"abc",
        b"message digest",
        b"The quick brown fox jumps over the lazy dog",
        b"The quick brown fox jumps over the lazy dog.",
        bytes(range(16)),
        bytes(range(256)),
        b"\x00" * 16,
        b"\xff" * 16,
        b"edge:A",
        b"edge:B",
        b"I0",
        b"I1",
        b"n17",
        b"0123456789abcdef" * 8,
        b"x" * 1000,
        bytes.fromhex("deadbeef"),
    ]
    rng = random.Random(20260814)
    for k in (1, 3, 7, 15, 16, 17, 31, 64):
        inputs.append(bytes(rng.randrange(256) for _ in range(k)))

    with open(os.path.join(data, "hash_vectors.tsv"), "w") as f:
        for raw in inputs:
            f.write(f"{raw.hex()}\t{hash_bytes(raw):032x}\n")

    hashes = [0, 1, 2, 158, 159, N - 1, N - 2, 2**64, 2**127]
    hashes += [rng.randrange(N) for _ in range(16)]
    with open(os.path.join(data, "rehash_vectors.tsv"), "w") as f:
        for h in hashes:
            f.write(f"{h:032x}\t{rehash(h):032x}\n")

    print("wrote", len(inputs), "hash vectors and", len(hashes), "rehash vectors")


if __name__ == "__main__":
    main()
