"""Packet arithmetic for the linear retrieval scheme.

A packet is a byte string; each byte is an element of the order-256 field
with addition realized as XOR. The scheme only ever combines packets with
coefficients 0 and 1, so no multiplication table is needed. The empty byte
string doubles as the dummy packet: it is the additive identity and is
never stored or transmitted.
"""

DUMMY = b""


def add_packets(a: bytes, b: bytes) -> bytes:
    """XOR two packets position-wise, zero-extending the shorter one."""
    if len(a) < len(b):
        a, b = b, a
    # a is now at least as long as b; trailing bytes of a pass through
    out = bytearray(a)
    for i, x in enumerate(b):
        out[i] ^= x
    return bytes(out)


def sum_packets(packets) -> bytes:
    """Left fold of add_packets; the empty sequence yields the dummy packet."""
    acc = DUMMY
    for p in packets:
        acc = add_packets(acc, p)
    return acc
