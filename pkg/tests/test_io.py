import json

import pytest

from planet import io
from planet.construct import braid_net, hessian_net, pencil_net, torus_net
from planet.cubic import Cubic
from planet.errors import InputError
from planet.field import ComplexField, CyclotomicField
from planet.quasigroup import LatinSquare, latin_from_net


def _same_net(a, b):
    return a.field == b.field and a.classes == b.classes and (a.points is None) == (b.points is None) and (
        a.points is None or set(a.points) == set(b.points) if a.field.exact else True
    )


@pytest.mark.parametrize("make", [lambda: pencil_net(4, CyclotomicField(4)), lambda: hessian_net(CyclotomicField(3)),
                                  lambda: braid_net(CyclotomicField(1))])
def test_exact_net_round_trip_is_bit_identical(make):
    net = make()
    text = json.dumps(io.encode_net(net))
    again = io.decode_net(json.loads(text))
    assert again.classes == net.classes
    assert json.dumps(io.encode_net(again)) == text


def test_approx_net_round_trip_is_value_identical():
    net = torus_net(2, 2)
    again = io.decode_net(json.loads(json.dumps(io.encode_net(net))))
    for a, b in zip(again.lines, net.lines):
        assert a.coords == b.coords


def test_scalar_encodings():
    K = CyclotomicField(3)
    assert io.encode_scalar(K, K.zeta(3)) == {"N": 3, "coeffs": [[0, 1], [1, 1]]}
    assert io.encode_scalar(ComplexField(), 1 - 2j) == [1.0, -2.0]


def test_error_locations():
    with pytest.raises(InputError) as exc:
        io.decode_net({"field": "complex", "classes": [[[1, 0, 0]], [[1, [0, 1, 2], 0]]]})
    assert exc.value.location == "$.classes[1][0][1]"
    with pytest.raises(InputError) as exc:
        io.decode_net({"field": "octonions", "classes": []})
    assert exc.value.location == "$.field"
    with pytest.raises(InputError) as exc:
        io.decode_net({"classes": []})
    assert "field" in str(exc.value)
    with pytest.raises(InputError) as exc:
        io.decode_net({"field": "complex", "classes": [[[0, 0, 0]]]})
    assert exc.value.location == "$.classes[0][0]"


def test_read_json_reports_line_and_column(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "field": "complex",\n  "classes": [\n')
    with pytest.raises(InputError) as exc:
        io.read_json(str(p))
    assert exc.value.location.startswith(f"{p}:")


def test_cubic_round_trip():
    K = CyclotomicField(3)
    c = Cubic(K, [1, 0, 0, 0, K.zeta(3), 0, 1, 0, 0, 1])
    again = io.decode_cubic(io.encode_cubic(c))
    assert again.coeffs == c.coeffs
    with pytest.raises(InputError):
        io.decode_cubic({"coeffs": [1, 2]})


def test_latin_round_trip_and_validation():
    ls = latin_from_net(pencil_net(3))
    again = io.decode_latin(io.encode_latin(ls))
    assert again.table.tolist() == ls.table.tolist()
    with pytest.raises(InputError) as exc:
        io.decode_latin({"table": [[0, 1], [1, "x"]]})
    assert exc.value.location == "$.table[1][1]"
    with pytest.raises(InputError):
        io.decode_latin({"table": [[0, 1], [0, 1]]})


def test_vector_decoding():
    assert io.decode_vector([1, 2, -3]) == [1, 2, -3]
    assert io.decode_vector({"vector": [[1, 2], 3]}) == [1 + 2j, 3]
    with pytest.raises(InputError) as exc:
        io.decode_vector([1, "a"])
    assert exc.value.location == "$[1]"
