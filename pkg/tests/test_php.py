import pytest

from cirquent.core import AND, OR, canonical_key, isomorphism
from cirquent.formula import parse, to_cirquent, underline
from cirquent.php import DefTable, PhpTrace, build_defs, build_php, php_proof, size_report
from cirquent.rules import check_derivation
from cirquent.semantics import BudgetExceeded, is_valid


def test_php_one_shape():
    c = build_php(1)
    ports = [c.label(p) for p in c.ports()]
    assert sum(p.negated for p in ports) == 2 and sum(not p.negated for p in ports) == 2
    assert len(c.ports()) == 4 and is_valid(c)
    right = [x for x in c.children(c.root)
             if c.is_gate(x, AND) and all(not c.label(p).negated for p in c.children(x))]
    assert len(right) == 1 and {str(c.label(p)) for p in c.children(right[0])} == \
        {"P_0_1", "P_1_1"}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_port_count(n):
    assert len(build_php(n).ports()) == 2 * n * (n + 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c_top_is_php(n):
    _, _, cs = build_defs(n)
    assert canonical_key(cs[n]) == canonical_key(build_php(n))


def test_b_one():
    _, bs, _ = build_defs(1)
    expected = to_cirquent(underline(parse("(P_0_1 | ~P_0_1) & (P_1_1 | ~P_1_1)")))
    assert isomorphism(bs[1], expected) is not None


def test_b_sizes_monotone_and_polynomial():
    _, bs, _ = build_defs(4)
    sizes = [len(bs[k]) for k in (4, 3, 2, 1)]
    assert sizes == sorted(sizes)
    assert sizes[-1] <= 4 ** 4


@pytest.mark.parametrize("n", [2, 3])
def test_each_family_index_is_one_node(n):
    t, bs, cs = build_defs(n)
    assert len(set(t.memo.values())) == len(t.memo)


def test_index_range():
    t = DefTable(2)
    with pytest.raises(IndexError):
        t.X(2, 3, 1)
    with pytest.raises(IndexError):
        t.Y(1, 0, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_php_proof_checks(n):
    tr = PhpTrace()
    d = php_proof(n, trace=tr)
    assert check_derivation(d, "cl8", proof=True) is None
    assert d.last == build_php(n)
    assert all(s.rule.name != "trade" for s in d.steps)
    assert set(tr.boundaries) >= {f"B{n}", "B1", "C1", f"C{n}"}


def test_php_limits():
    with pytest.raises(BudgetExceeded):
        php_proof(3, max_n=2)
    with pytest.raises(ValueError):
        build_php(0)


def test_size_report():
    rows = size_report(3)
    assert [r["n"] for r in rows] == [1, 2, 3]
    assert rows[0]["slope"] is None and all(r["slope"] > 0 for r in rows[1:])
    assert all(a["size"] < b["size"] for a, b in zip(rows, rows[1:]))
