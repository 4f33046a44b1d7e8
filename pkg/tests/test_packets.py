"""Packet arithmetic: XOR with zero-extension, dummy packet as identity."""

import random

from scpir.packets import DUMMY, add_packets, sum_packets


def test_self_cancellation():
    assert add_packets(b"\x0a\x0b", b"\x0a\x0b") == b"\x00\x00"


def test_dummy_is_identity():
    assert add_packets(b"\x01", b"") == b"\x01"
    assert add_packets(b"", b"\x01") == b"\x01"
    assert add_packets(DUMMY, DUMMY) == DUMMY


def test_positionwise_xor_with_padding():
    # 0x12 ^ 0xff = 0xed; second byte meets implicit zero
    assert add_packets(b"\x12\x34", b"\xff") == b"\xed\x34"


def test_sum_empty_is_dummy():
    assert sum_packets([]) == DUMMY


def test_sum_odd_repeats_in_characteristic_two():
    p = b"\x5a\x11\xf0"
    assert sum_packets([p, p, p]) == p
    assert sum_packets([p, p]) == b"\x00" * 3


def test_sum_xor_fold():
    assert sum_packets([b"\x01", b"\x02", b"\x04"]) == b"\x07"


def test_algebraic_laws_on_random_packets():
    rng = random.Random(20240101)
    for _ in range(200):
        a = rng.randbytes(rng.randrange(9))
        b = rng.randbytes(rng.randrange(9))
        c = rng.randbytes(rng.randrange(9))
        assert add_packets(a, b) == add_packets(b, a)
        assert add_packets(add_packets(a, b), c) == add_packets(a, add_packets(b, c))
        assert add_packets(a, a) == b"\x00" * len(a)
        assert len(add_packets(a, b)) == max(len(a), len(b))
