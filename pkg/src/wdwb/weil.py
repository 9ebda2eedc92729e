"""Finite models of the Weil group: an inertia group with a Frobenius automorphism."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import product

from .errors import InvalidParameter


class FiniteGroup:
    """A finite group given by abelian invariants or by a multiplication table.

    Elements are hashable: integer tuples for the abelian model, integers
    0..order-1 (0 is the identity) for the table model.
    """

    def __init__(self, invariants=None, table=None, generators=None):
        if (invariants is None) == (table is None):
            raise InvalidParameter("give exactly one of invariants or table")
        if invariants is not None:
            invariants = tuple(int(d) for d in invariants)
            if any(d < 1 for d in invariants):
                raise InvalidParameter("invariant factors must be positive")
            self.invariants = invariants
            self.table = None
            self.generators = tuple(
                tuple(1 if i == j else 0 for i in range(len(invariants))) for j in range(len(invariants))
            )
        else:
            table = [list(map(int, row)) for row in table]
            size = len(table)
            if any(len(row) != size for row in table):
                raise InvalidParameter("multiplication table must be square")
            if any(table[0][j] != j or table[j][0] != j for j in range(size)):
                raise InvalidParameter("element 0 must be the identity")
            for row in table:
                if sorted(row) != list(range(size)):
                    raise InvalidParameter("multiplication table rows must be permutations")
            for a, b, c in product(range(size), repeat=3):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise InvalidParameter("multiplication table is not associative")
            self.invariants = None
            self.table = table
            self.generators = tuple(int(g) for g in (generators or range(1, size)))
        if self.closure(self.generators) != set(self.elements):
            raise InvalidParameter("generators do not generate the group")

    @property
    def abelian_model(self) -> bool:
        return self.invariants is not None

    @cached_property
    def elements(self) -> tuple:
        if self.abelian_model:
            return tuple(product(*(range(d) for d in self.invariants)))
        return tuple(range(len(self.table)))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self):
        return (0,) * len(self.invariants) if self.abelian_model else 0

    def mul(self, a, b):
        if self.abelian_model:
            return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))
        return self.table[a][b]

    def element_order(self, a) -> int:
        k, cur = 1, a
        while cur != self.identity:
            cur = self.mul(cur, a)
            k += 1
        return k

    def closure(self, gens) -> set:
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return seen

    def words(self):
        """BFS tree: for each element x != e, a pair (parent, generator index) with x = parent * g."""
        tree = {}
        queue = deque([self.identity])
        seen = {self.identity}
        while queue:
            x = queue.popleft()
            for j, g in enumerate(self.generators):
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    tree[y] = (x, j)
                    queue.append(y)
        return tree

    def label(self, a) -> str:
        if self.abelian_model:
            return ",".join(str(x) for x in a)
        return str(a)

    def to_json(self):
        if self.abelian_model:
            return {"inertia_invariants": list(self.invariants)}
        return {"inertia_table": self.table, "inertia_generators": list(self.generators)}

    def __eq__(self, other):
        return (
            isinstance(other, FiniteGroup)
            and self.invariants == other.invariants
            and self.table == other.table
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.invariants, str(self.table), self.generators))


class WeilDatum:
    """Gamma = I x| <Fr>: elements (iota, k), Fr iota Fr^-1 = alpha(iota), d(iota, k) = k.

    ``frobenius_action`` is an integer matrix on the invariant-factor
    coordinates (abelian model) or a permutation of element indices (table
    model).  ``frobenius_order``, when set, is the order of Fr in the finite
    quotient through which parameters factor.
    """

    def __init__(self, inertia: FiniteGroup, frobenius_action=None, frobenius_order=None):
        self.inertia = inertia
        if inertia.abelian_model:
            r = len(inertia.invariants)
            A = frobenius_action if frobenius_action is not None else [
                [1 if i == j else 0 for j in range(r)] for i in range(r)
            ]
            A = [list(map(int, row)) for row in A]
            if len(A) != r or any(len(row) != r for row in A):
                raise InvalidParameter("frobenius_action must be a square matrix on the invariant factors")
            self.frobenius_action = A
        else:
            size = inertia.order
            perm = list(range(size)) if frobenius_action is None else list(map(int, frobenius_action))
            if sorted(perm) != list(range(size)):
                raise InvalidParameter("frobenius_action must be a permutation of the elements")
            self.frobenius_action = perm
        self.frobenius_order = None if frobenius_order is None else int(frobenius_order)
        if self.frobenius_order is not None and self.frobenius_order < 1:
            raise InvalidParameter("frobenius_order must be positive")
        self._check_automorphism()

    @classmethod
    def trivial(cls) -> WeilDatum:
        return cls(FiniteGroup(invariants=()))

    @classmethod
    def cyclic(cls, k: int, frobenius_order=None, power: int = 1) -> WeilDatum:
        """Inertia Z/k with Fr acting by iota -> iota^power."""
        return cls(FiniteGroup(invariants=(k,)), [[power % k]], frobenius_order)

    def alpha(self, a):
        I = self.inertia
        if I.abelian_model:
            A = self.frobenius_action
            return tuple(
                sum(A[i][j] * a[j] for j in range(len(a))) % d for i, d in enumerate(I.invariants)
            )
        return self.frobenius_action[a]

    def alpha_power(self, a, k: int):
        if k < 0:
            inv = {self.alpha(x): x for x in self.inertia.elements}
            for _ in range(-k):
                a = inv[a]
            return a
        for _ in range(k):
            a = self.alpha(a)
        return a

    def _check_automorphism(self):
        I = self.inertia
        images = [self.alpha(x) for x in I.elements]
        if len(set(images)) != I.order:
            raise InvalidParameter("Frobenius action is not bijective")
        for a in I.elements:
            for g in I.generators:
                if self.alpha(I.mul(a, g)) != I.mul(self.alpha(a), self.alpha(g)):
                    raise InvalidParameter("Frobenius action is not a homomorphism")
        if self.frobenius_order is not None:
            for g in I.generators:
                if self.alpha_power(g, self.frobenius_order) != g:
                    raise InvalidParameter("alpha^frobenius_order must be the identity")

    def mul(self, x, y):
        (a, k), (b, l) = x, y
        return (self.inertia.mul(a, self.alpha_power(b, k)), k + l)

    @staticmethod
    def degree(x) -> int:
        return x[1]

    def label(self, x) -> str:
        a, k = x
        return f"({self.inertia.label(a)};{k})"

    @property
    def action_is_trivial(self) -> bool:
        return all(self.alpha(g) == g for g in self.inertia.generators)

    def to_json(self):
        out = self.inertia.to_json()
        out["frobenius_action"] = self.frobenius_action
        if self.frobenius_order is not None:
            out["frobenius_order"] = self.frobenius_order
        return out

    @classmethod
    def from_json(cls, data) -> WeilDatum:
        if "inertia_table" in data:
            I = FiniteGroup(table=data["inertia_table"], generators=data.get("inertia_generators"))
        else:
            I = FiniteGroup(invariants=data.get("inertia_invariants", []))
        return cls(I, data.get("frobenius_action"), data.get("frobenius_order"))

    def __eq__(self, other):
        return (
            isinstance(other, WeilDatum)
            and self.inertia == other.inertia
            and self.frobenius_action == other.frobenius_action
            and self.frobenius_order == other.frobenius_order
        )

    def __hash__(self):
        return hash((self.inertia, str(self.frobenius_action), self.frobenius_order))
