import pytest
from hypothesis import given
from hypothesis import strategies as st

from spxstore import ChunkLengthError, xor_chunks, zero_chunk


def xor_oracle(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def test_zero_is_identity():
    assert xor_chunks(b"\x00\x00", b"\xab\xcd") == b"\xab\xcd"


def test_self_inverse():
    assert xor_chunks(b"\xff", b"\xff") == b"\x00"


def test_bytewise_value():
    assert xor_chunks(b"\x12\x34", b"\x56\x78") == b"\x44\x4c"
    assert xor_chunks(b"\x12\x34", b"\x56\x78") == xor_oracle(b"\x12\x34", b"\x56\x78")


def test_length_mismatch_rejected():
    with pytest.raises(ChunkLengthError):
        xor_chunks(b"\x00", b"\x00\x00")


def test_zero_chunk():
    assert zero_chunk(1) == b"\x00"
    assert zero_chunk(4) == b"\x00\x00\x00\x00"


@pytest.mark.parametrize("bad", [0, -1])
def test_zero_chunk_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        zero_chunk(bad)


equal_pairs = st.integers(min_value=1, max_value=64).flatmap(
    lambda n: st.tuples(
        st.binary(min_size=n, max_size=n), st.binary(min_size=n, max_size=n)
    )
)

equal_triples = st.integers(min_value=1, max_value=64).flatmap(
    lambda n: st.tuples(
        st.binary(min_size=n, max_size=n),
        st.binary(min_size=n, max_size=n),
        st.binary(min_size=n, max_size=n),
    )
)


@given(equal_pairs)
def test_matches_bytewise_oracle(pair):
    a, b = pair
    assert xor_chunks(a, b) == xor_oracle(a, b)


@given(equal_pairs)
def test_commutative(pair):
    a, b = pair
    assert xor_chunks(a, b) == xor_chunks(b, a)


@given(equal_triples)
def test_associative(triple):
    a, b, c = triple
    assert xor_chunks(a, xor_chunks(b, c)) == xor_chunks(xor_chunks(a, b), c)


@given(st.binary(min_size=1, max_size=64))
def test_xor_with_self_is_zero(a):
    assert xor_chunks(a, a) == zero_chunk(len(a))


@given(st.binary(min_size=1, max_size=64))
def test_identity_law(a):
    assert xor_chunks(zero_chunk(len(a)), a) == a
