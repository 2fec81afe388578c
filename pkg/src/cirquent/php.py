"""Pigeonhole formulas and their polynomial-size CL8 proofs.

Atoms are P_i_j ("pigeon i sits in hole j"), 0 <= i <= n, 1 <= j <= n. The
definitional families X, Y (and the helpers Z = X | Y, D) are built once per
index into a hash-consed store, which realizes the overlines of B^k and C^k.

The proof runs B^n (from the axiom by couplings), then B^n -> B^(n-1) -> ... -> B^1,
then B^1 -> C^1, then C^1 -> C^2 -> ... -> C^n = PHP^n. Every step is a primitive
rule; the combined "pulldown with restructuring" moves are spelled out below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .builder import Builder
from .core import AND, OR, Cirquent, Gate, Kind, Label, Port, isomorphism
from .formula import Lit, conj, disj, to_cirquent
from .prover import endgame, expand_trade, trade_conclusion, trade_params
from .rules import Derivation, RuleParams
from .semantics import BudgetExceeded

DEFAULT_MAX_N = 6


def atom(i: int, j: int) -> str:
    return f"P_{i}_{j}"


def php_formula(n: int):
    """The PHP^n hyperformula; positive literals are overlined, negative ones are not."""
    left = disj(*(conj(*(Lit(atom(i, j), True) for j in range(1, n + 1))) for i in range(n + 1)))
    right = disj(*(conj(Lit(atom(i, j), over=True), Lit(atom(e, j), over=True))
                   for i in range(n + 1) for e in range(i + 1, n + 1) for j in range(1, n + 1)))
    return disj(left, right)


def build_php(n: int) -> Cirquent:
    if n < 1:
        raise ValueError("n must be positive")
    return to_cirquent(php_formula(n))


# ---------------------------------------------------------------------------
# definitional families

class DefTable:
    """One growing store holding X^k, Y^k, Z^k, D^k for all levels k <= n."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.labels: dict[str, Label] = {}
        self.kids: dict[str, frozenset[str]] = {}
        self.memo: dict[tuple, str] = {}
        self._cons: dict[tuple, str] = {}

    def _gate(self, kind: Kind, kids, name: str) -> str:
        key = (kind, frozenset(kids))
        if key not in self._cons:
            assert name not in self.labels, name
            self.labels[name] = Gate(kind)
            self.kids[name] = key[1]
            self._cons[key] = name
        return self._cons[key]

    def _port(self, name: str, label: Port) -> str:
        self.labels[name] = label
        self.kids[name] = frozenset()
        return name

    def _check(self, k: int, i: int, j: int) -> None:
        if not (1 <= k <= self.n and 0 <= i <= k and 1 <= j <= k):
            raise IndexError(f"index k={k}, i={i}, j={j} out of range for n={self.n}")

    def X(self, k: int, i: int, j: int) -> str:
        key = ("X", k, i, j)
        if key not in self.memo:
            self._check(k, i, j)
            if k == self.n:
                self.memo[key] = self._port(f"X{k}_{i}_{j}", Port(atom(i, j)))
            else:
                K = k + 1
                a = self._gate(OR, {self.X(K, i, j), self.X(K, i, K)}, f"XA{k}_{i}_{j}")
                b = self._gate(OR, {self.X(K, i, j), self.X(K, K, j)}, f"XB{k}_{i}_{j}")
                self.memo[key] = self._gate(AND, {a, b}, f"X{k}_{i}_{j}")
        return self.memo[key]

    def Y(self, k: int, i: int, j: int) -> str:
        key = ("Y", k, i, j)
        if key not in self.memo:
            self._check(k, i, j)
            if k == self.n:
                self.memo[key] = self._port(f"Y{k}_{i}_{j}", Port(atom(i, j), True))
            else:
                K = k + 1
                e = self._gate(OR, {self.Y(K, i, K), self.Y(K, K, j)}, f"YE{k}_{i}_{j}")
                self.memo[key] = self._gate(
                    AND, {self.Y(K, i, j), e, self.Z(K, i, K), self.Z(K, K, K)}, f"Y{k}_{i}_{j}")
        return self.memo[key]

    def Z(self, k: int, i: int, j: int) -> str:
        key = ("Z", k, i, j)
        if key not in self.memo:
            self.memo[key] = self._gate(OR, {self.X(k, i, j), self.Y(k, i, j)}, f"Z{k}_{i}_{j}")
        return self.memo[key]

    def D(self, k: int, i: int) -> str:
        key = ("D", k, i, k)
        if key not in self.memo:
            self.memo[key] = self._gate(AND, {self.Z(k, i, k), self.Z(k, k, k)}, f"D{k}_{i}")
        return self.memo[key]

    def _extract(self, root: str, top: dict[str, tuple[Label, frozenset[str]]]) -> Cirquent:
        nodes: dict[str, Label] = {}
        ch: dict[str, frozenset[str]] = {}
        stack = [root]
        while stack:
            x = stack.pop()
            if x in nodes:
                continue
            lab, ks = top[x] if x in top else (self.labels[x], self.kids[x])
            nodes[x], ch[x] = lab, ks
            stack.extend(ks)
        return Cirquent(nodes, ch, root)

    def B(self, k: int) -> Cirquent:
        """The full compression of B^k."""
        top = {f"B{k}": (Gate(AND), frozenset(self.Z(k, i, j) for i in range(k + 1)
                                             for j in range(1, k + 1)))}
        return self._extract(f"B{k}", top)

    def C(self, k: int) -> Cirquent:
        """The full compression of C^k, with unary connectives collapsed."""
        top: dict[str, tuple[Label, frozenset[str]]] = {}
        ws = []
        for i in range(k + 1):
            ys = [self.Y(k, i, j) for j in range(1, k + 1)]
            if len(ys) == 1:
                ws.append(ys[0])
            else:
                ws.append(f"C{k}W{i}")
                top[ws[-1]] = (Gate(AND), frozenset(ys))
        vs = []
        for i in range(k + 1):
            for e in range(i + 1, k + 1):
                for j in range(1, k + 1):
                    vs.append(f"C{k}V{i}_{e}_{j}")
                    top[vs[-1]] = (Gate(AND), frozenset({self.X(k, i, j), self.X(k, e, j)}))
        top[f"C{k}L"] = (Gate(OR), frozenset(ws))
        if len(vs) == 1:
            right = vs[0]
        else:
            right = f"C{k}R"
            top[right] = (Gate(OR), frozenset(vs))
        top[f"C{k}"] = (Gate(OR), frozenset({f"C{k}L", right}))
        return self._extract(f"C{k}", top)


def build_defs(n: int) -> tuple[DefTable, dict[int, Cirquent], dict[int, Cirquent]]:
    t = DefTable(n)
    bs = {k: t.B(k) for k in range(1, n + 1)}
    cs = {k: t.C(k) for k in range(1, n + 1)}
    for k in range(1, n + 1):
        for i in range(k):
            t.D(k, i)
    return t, bs, cs


# ---------------------------------------------------------------------------
# local rewriting helpers over a top-down builder

class _Run:
    def __init__(self, start: Cirquent):
        self.w = Builder(start)

    @property
    def cur(self) -> Cirquent:
        return self.w.current

    def ch(self, x: str) -> frozenset[str]:
        return self.cur.children(x)

    def pa(self, x: str) -> frozenset[str]:
        return self.cur.parents(x)

    def kind(self, x: str) -> str:
        return self.cur.label(x).kind.value

    def find(self, parent: str, kids) -> str:
        kids = frozenset(kids)
        hits = [x for x in sorted(self.ch(parent)) if self.ch(x) == kids]
        assert hits, f"no child of {parent} with children {sorted(kids)}"
        return hits[0]

    def group(self, a: str, kids) -> str:
        """Put `kids` of a under a new gate of a's kind."""
        kids = frozenset(kids)
        b = self.w.fresh("g")
        self.w.apply(f"deepening/{self.kind(a)}", a=a, b=b, Gamma=self.ch(a) - kids,
                     Delta=kids, Theta=self.pa(a))
        return b

    def flatten(self, a: str, b: str) -> None:
        self.w.apply(f"flattening/{self.kind(a)}", a=a, b=b, Gamma=self.ch(a) - {b},
                     Delta=self.ch(b), Theta=self.pa(a))

    def wrap(self, a: str, kind: Kind, theta) -> str:
        """A new unary gate between a and its parents `theta`."""
        theta = frozenset(theta)
        b = self.w.fresh("u")
        self.w.apply(f"lengthening/{kind.value}", a=a, b=b, Gamma=self.ch(a), Theta=theta,
                     Omega=self.pa(a) - theta)
        return b

    def unwrap(self, b: str) -> None:
        (a,) = self.ch(b)
        self.w.apply(f"shortening/{self.kind(b)}", a=a, b=b, Gamma=self.ch(a),
                     Theta=self.pa(b), Omega=self.pa(a) - {b})

    def private(self, x: str, parent: str) -> str:
        """A copy of x whose only parent is `parent`; other parents keep the rest."""
        others = self.pa(x) - {parent}
        if not others:
            return x
        a, b = self.w.fresh(x), self.w.fresh(x)
        self.w.apply(f"localization/{self.kind(x)}", a=a, b=b, c=x, Gamma=self.ch(x),
                     Theta={parent}, Omega=others)
        return a

    def dup(self, x: str, parent: str) -> tuple[str, str]:
        """Two copies of x side by side under `parent`."""
        a, b = self.w.fresh(x), self.w.fresh(x)
        self.w.apply(f"localization/{self.kind(x)}", a=a, b=b, c=x, Gamma=self.ch(x),
                     Theta={parent}, Omega=self.pa(x))
        return a, b

    def copies(self, x: str, parent: str, m: int) -> list[str]:
        out = []
        for _ in range(m - 1):
            a, x = self.dup(x, parent)
            out.append(a)
        return out + [x]

    def merge(self, x: str, y: str) -> str:
        c = self.w.fresh("m")
        self.w.apply(f"globalization/{self.kind(x)}", a=x, b=y, c=c, Gamma=self.ch(x),
                     Theta=self.pa(x), Omega=self.pa(y))
        return c

    def merge_all(self, xs: list[str]) -> str:
        x = xs[0]
        for y in xs[1:]:
            x = self.merge(x, y)
        return x

    def weaken(self, a: str, extra) -> None:
        self.w.apply("weakening", a=a, Gamma=self.ch(a), Delta=extra, Theta=self.pa(a))

    def pulldown(self, a: str, b: str, c: str, pi) -> None:
        pi = frozenset(pi)
        self.w.apply("pulldown", a=a, b=b, c=c, Gamma=self.ch(a) - pi, Delta=self.ch(c) - {b},
                     Pi=pi, Sigma=self.ch(b) - {a}, Theta=self.pa(c))

    def trade(self, a: str, pi) -> str:
        """Trade on the conjunction a of disjunctions b_i = c_i | pi; returns the new disjunction."""
        pi = frozenset(pi)
        bs = sorted(self.ch(a))
        cs = []
        for bi in bs:
            (ci,) = self.ch(bi) - pi
            cs.append(ci)
        b = self.w.fresh("t")
        p: RuleParams = trade_params(a, b, cs, bs, Pi=pi, Theta=self.pa(a),
                                     Gammas=[self.ch(c) for c in cs],
                                     Omegas=[self.pa(c) - {bi} for c, bi in zip(cs, bs)])
        concl = trade_conclusion(self.cur, p)
        self.w.extend(expand_trade(concl, p))
        return b

    def distribute(self, v: str, x: str, b: str, move: str, top: str) -> None:
        """v = x & (move | keep) under the disjunction `top` becomes v = x & keep, with
        x & move added to `top`; x ends up shared by both conjunctions."""
        xh = self.wrap(x, AND, {v})
        x1, x2 = self.dup(xh, v)
        n = self.group(v, {x2, b})
        w = self.wrap(n, OR, {v})
        keep = self.ch(b) - {move}
        self.pulldown(b, n, w, keep)
        self.unwrap(b)
        self.unwrap(self.merge(x1, x2))
        self.pulldown(w, v, top, {n})
        self.unwrap(w)


class _PhpProof(_Run):
    def __init__(self, n: int, table: DefTable):
        self.n = n
        self.t = table
        super().__init__(table.B(n))
        # current names of X^k, Y^k nodes per level; these names never change once made
        self.X = {n: {(i, j): table.X(n, i, j) for i in range(n + 1) for j in range(1, n + 1)}}
        self.Y = {n: {(i, j): table.Y(n, i, j) for i in range(n + 1) for j in range(1, n + 1)}}

    # B^k -> B^(k-1)
    def lower_b(self, k: int) -> None:
        X, Y = self.X[k], self.Y[k]
        R = self.cur.root
        Z = {(i, j): self.find(R, {X[i, j], Y[i, j]}) for i in range(k + 1)
             for j in range(1, k + 1)}
        zik = {i: self.copies(Z[i, k], R, 2 * (k - 1)) for i in range(k)}
        zkj = {j: self.copies(Z[k, j], R, k) for j in range(1, k)}
        zkk = self.copies(Z[k, k], R, k * (k - 1))
        keep_ik: dict[int, list[str]] = {i: [] for i in range(k)}
        keep_kk: list[str] = []
        newX, newY = {}, {}
        for i in range(k):
            for j in range(1, k):
                zc1, zd1 = zik[i].pop(), zik[i].pop()
                zc2, zd2 = zkj[j].pop(), zkk.pop()
                zij = Z[i, j]
                # (X_ik | Y_ik) & (X_kj | Y_kj) becomes (X_ik & X_kj) | Y_ik | Y_kj
                m_big = self.group(R, {zc1, zc2})
                c = self.wrap(m_big, OR, {R})
                self.pulldown(zc1, m_big, c, {Y[i, k]})
                self.pulldown(zc2, m_big, c, {Y[k, j]})
                self.weaken(zc1, {X[i, j]})
                self.weaken(zc2, {X[i, j]})
                # a second copy of X^(k-1)_ij grown from X_ij inside zij, then merged
                m = self.wrap(X[i, j], AND, {zij})
                u = self.wrap(X[i, j], OR, {m})
                u1, u2 = self.dup(u, m)
                self.weaken(u1, {X[i, k]})
                self.weaken(u2, {X[k, j]})
                self.merge(u1, zc1)
                self.merge(u2, zc2)
                xp = self.merge(m, m_big)
                # (X' | Y_ij) & (X' | (Y_ik | Y_kj)) & Z_ik & Z_kk  becomes  X' | Y'
                self.group(c, {Y[i, k], Y[k, j]})
                t = self.group(R, {zij, c})
                bt = self.trade(t, {xp})
                y = self.group(R, {bt, zd1, zd2})
                z = self.wrap(y, OR, {R})
                self.pulldown(bt, y, z, {xp})
                self.unwrap(bt)
                self.flatten(y, t)
                newX[i, j], newY[i, j] = xp, y
                keep_ik[i].append(zd1)
                keep_kk.append(zd2)
        for i in range(k):
            self.merge_all(keep_ik[i])
        self.merge_all(keep_kk)
        self.X[k - 1], self.Y[k - 1] = newX, newY

    # B^1 -> C^1
    def b_to_c(self) -> None:
        X, Y = self.X[1], self.Y[1]
        R = self.cur.root
        z0 = self.find(R, {X[0, 1], Y[0, 1]})
        z1 = self.find(R, {X[1, 1], Y[1, 1]})
        q = self.wrap(R, OR, ())
        self.pulldown(z0, R, q, {Y[0, 1]})
        self.pulldown(z1, R, q, {Y[1, 1]})
        self.unwrap(z0)
        self.unwrap(z1)
        self.group(q, {Y[0, 1], Y[1, 1]})

    # C^(k-1) -> C^k
    def raise_c(self, k: int) -> None:
        Xp, Yp = self.X[k - 1], self.Y[k - 1]
        X, Y = self.X[k], self.Y[k]
        Q = self.cur.root
        vs, ws = {}, {}
        for part in sorted(self.ch(Q)):
            members = self.ch(part) if self.cur.is_gate(part, OR) else frozenset({part})
            for v in members:
                kids = self.ch(v)
                for i in range(k):
                    w_kids = {Yp[i, j] for j in range(1, k)}
                    if kids == w_kids or (k == 2 and v == Yp[i, 1]):
                        ws[i] = v
                for (i, j), x in Xp.items():
                    for e in range(i + 1, k):
                        if kids == {x, Xp[e, j]}:
                            vs[i, e, j] = v
            if self.cur.is_gate(part, OR):
                self.flatten(Q, part)
        assert len(ws) == k and len(vs) == k * (k - 1) // 2 * (k - 1), (ws, vs)
        for (i, e, j), v in sorted(vs.items()):
            self._pair_step(Q, v, i, e, j, k)
        for i in range(k):
            self._row_step(Q, ws[i], i, k)
        groups: dict[frozenset, list[str]] = {}
        for x in sorted(self.ch(Q)):
            groups.setdefault(self.ch(x), []).append(x)
        for xs in groups.values():
            self.merge_all(xs)
        rows = {self.find(Q, {Y[i, j] for j in range(1, k + 1)}) for i in range(k + 1)}
        self.group(Q, rows)
        self.group(Q, self.ch(Q) - {x for x in self.ch(Q) if self.ch(x) >= rows})

    def _pair_step(self, Q: str, v: str, i: int, e: int, j: int, k: int) -> None:
        """X'_ij & X'_ej  becomes  (X_ij & X_ej), adding (X_ij & X_kj), (X_ej & X_kj)
        and (X_ik & X_ek) to Q."""
        X = self.X[k]
        x1, x2 = sorted(self.ch(v), key=lambda x: X[i, j] not in
                        {y for a in self.ch(x) for y in self.ch(a)} or
                        X[i, k] not in {y for a in self.ch(x) for y in self.ch(a)})
        x1 = self.private(x1, v)
        x2 = self.private(x2, v)
        self.flatten(v, x1)
        self.flatten(v, x2)
        a_ij = self.private(self.find(v, {X[i, j], X[i, k]}), v)
        b_ij = self.private(self.find(v, {X[i, j], X[k, j]}), v)
        a_ej = self.private(self.find(v, {X[e, j], X[e, k]}), v)
        b_ej = self.private(self.find(v, {X[e, j], X[k, j]}), v)
        t1 = self.group(v, {a_ij, b_ij})
        bt = self.trade(t1, {X[i, j]})
        g1 = self.group(v, {bt, a_ej})
        w1 = self.wrap(g1, OR, {v})
        self.pulldown(bt, g1, w1, {X[i, j]})
        self.unwrap(bt)
        self.pulldown(w1, v, Q, {g1})
        self.unwrap(w1)
        self.flatten(g1, t1)
        n2 = self.group(g1, {X[k, j], a_ej})
        w2 = self.wrap(n2, OR, {g1})
        self.pulldown(a_ej, n2, w2, {X[e, k]})
        self.unwrap(a_ej)
        self.pulldown(w2, g1, Q, {n2})
        self.unwrap(w2)
        self.distribute(v, X[i, j], b_ej, X[k, j], Q)

    def _row_step(self, Q: str, w_i: str, i: int, k: int) -> None:
        """The conjunction of Y'_ij over j < k becomes the conjunction of Y_ij over j <= k,
        adding the conjunction of Y_kj over j <= k and (X_ik & X_kk) to Q."""
        X, Y, Yp = self.X[k], self.Y[k], self.Y[k - 1]
        if k > 2:
            for j in range(1, k):
                self.flatten(w_i, Yp[i, j])
        es = {self.find(w_i, {Y[i, k], Y[k, j]}) for j in range(1, k)}
        z_ik = self.find(w_i, {X[i, k], Y[i, k]})
        z_kk = self.private(self.find(w_i, {X[k, k], Y[k, k]}), w_i)
        ee = self.group(w_i, es | {z_kk})
        t = self.group(ee, es)
        bt = self.trade(t, {Y[i, k]})
        w = self.wrap(ee, OR, {w_i})
        self.pulldown(bt, ee, w, {Y[i, k]})
        self.unwrap(bt)
        self.pulldown(z_kk, ee, w, {X[k, k]})
        self.unwrap(z_kk)
        self.flatten(ee, t)
        m = self.group(w_i, {z_ik, w})
        w3 = self.wrap(m, OR, {w_i})
        self.pulldown(w, m, w3, {ee, Y[i, k]})
        self.unwrap(w)
        # Y_ik is already a child of w3, so this pulldown merges the two occurrences
        self.pulldown(z_ik, m, w3, {Y[i, k]})
        self.unwrap(z_ik)
        self.pulldown(w3, w_i, Q, {m, ee})
        self.unwrap(w3)


@dataclass
class PhpTrace:
    boundaries: dict[str, Cirquent] = field(default_factory=dict)


def php_proof(n: int, max_n: int = DEFAULT_MAX_N, trace: PhpTrace | None = None) -> Derivation:
    """A primitive-rule CL8 proof of build_php(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_n:
        raise BudgetExceeded(f"n={n} exceeds the configured limit {max_n}")
    table = DefTable(n)
    start = Builder(table.B(n), bottom_up=True)
    endgame(start)
    run = _PhpProof(n, table)
    marks = {f"B{n}": run.cur}
    for k in range(n, 1, -1):
        run.lower_b(k)
        marks[f"B{k - 1}"] = run.cur
    run.b_to_c()
    marks["C1"] = run.cur
    for k in range(2, n + 1):
        run.raise_c(k)
        marks[f"C{k}"] = run.cur
    target = build_php(n)
    iso = isomorphism(run.cur, target)
    if iso is None:
        raise AssertionError("derived cirquent does not match PHP^n")
    if any(a != b for a, b in iso.items()):
        run.w.apply("redraw", mapping=iso)
    if trace is not None:
        trace.boundaries = marks
    return start.derivation().then(run.w.derivation())


def size_report(n_max: int, max_n: int = DEFAULT_MAX_N) -> list[dict]:
    """Per n: proof size, cirquent count, largest cirquent, and the log-log slope."""
    rows: list[dict] = []
    for n in range(1, n_max + 1):
        d = php_proof(n, max_n)
        size = d.size()
        row = {"n": n, "size": size, "cirquents": len(d.cirquents),
               "max_cirquent": max(c.size() for c in d.cirquents), "slope": None}
        if rows:
            prev = rows[-1]
            row["slope"] = math.log(size / prev["size"]) / math.log(n / prev["n"])
        rows.append(row)
    return rows


__all__ = ["atom", "php_formula", "build_php", "DefTable", "build_defs", "php_proof",
           "size_report", "PhpTrace", "DEFAULT_MAX_N"]
