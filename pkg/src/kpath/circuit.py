"""Scalar-free arithmetic circuits and the randomized multilinear-term detector.

A circuit is a DAG of INPUT, ADD (fan-in >= 1) and MUL (fan-in 2) gates with a
single output.  There are no constants and no scalar gates.  To test whether
the polynomial it computes has a multilinear term of degree at most k, each
MUL gate is followed by a random nonzero field scalar, every variable x_i is
replaced by one + basis(v_i) for a random v_i in Z_2^k, and the circuit is
evaluated in F[Z_2^k].  Squares vanish in characteristic two, so a nonzero
result certifies a multilinear term.  Lower-degree terms are lifted to degree
k by multiplying the output by fresh variables.

Text format, one gate per line::

    g1 = INPUT x1
    g2 = INPUT x2
    g3 = MUL g1 g2
    g4 = ADD g3 g1
    OUTPUT g4

``#`` starts a comment.
"""

from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

from . import gf2e
from . import group_algebra as ga
from .errors import FormatError, ParameterError
from .gf2e import FieldSpec
from .group_algebra import AlgebraElem
from .rng import RngStream, as_stream

INPUT, ADD, MUL = "INPUT", "ADD", "MUL"
DEFAULT_TRIALS = 64

# elements of (batch x 2^k) evaluated at once; bounds peak memory per gate
_BATCH_BUDGET = 1 << 20


@dataclass(frozen=True)
class Gate:
    op: str
    args: tuple

    def __str__(self):
        if self.op == INPUT:
            return f"INPUT x{self.args[0]}"
        return f"{self.op} " + " ".join(f"g{a}" for a in self.args)


class Circuit:
    """Gates keyed by integer id, kept in definition order."""

    def __init__(self, gates: dict, output: int, n: int | None = None):
        self.gates = dict(gates)
        self.output = output
        if n is None:
            n = max((g.args[0] for g in self.gates.values() if g.op == INPUT), default=0)
        self.n = n

    def __repr__(self):
        return f"Circuit(size={self.size}, n={self.n}, output=g{self.output})"

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (self.gates, self.output, self.n) == (other.gates, other.output, other.n)

    @property
    def size(self) -> int:
        return len(self.gates)

    def mul_gates(self) -> list[int]:
        return [gid for gid, g in self.gates.items() if g.op == MUL]

    @cached_property
    def _plan(self):
        """Reachable gates in evaluation order, with MUL gates numbered."""
        reach = set()
        stack = [self.output]
        while stack:
            gid = stack.pop()
            if gid in reach:
                continue
            reach.add(gid)
            g = self.gates[gid]
            if g.op != INPUT:
                stack.extend(g.args)
        mul_index = {gid: i for i, gid in enumerate(self.mul_gates())}
        order = [gid for gid in self.gates if gid in reach]
        return order, mul_index


class CircuitBuilder:
    """Incremental construction with consecutive gate ids."""

    def __init__(self):
        self.gates = {}
        self._vars = {}

    def _new(self, op, args):
        gid = len(self.gates) + 1
        self.gates[gid] = Gate(op, tuple(args))
        return gid

    def var(self, i: int) -> int:
        if i not in self._vars:
            self._vars[i] = self._new(INPUT, (i,))
        return self._vars[i]

    def add(self, *children) -> int:
        return self._new(ADD, children)

    def mul(self, a: int, b: int) -> int:
        return self._new(MUL, (a, b))

    def build(self, output: int, n: int | None = None) -> Circuit:
        return Circuit(self.gates, output, n)


def product_circuit(variables) -> Circuit:
    """x_{i1} * x_{i2} * ... as a left-deep MUL chain."""
    b = CircuitBuilder()
    out = reduce(b.mul, [b.var(i) for i in variables])
    return b.build(out)


# -- structure -----------------------------------------------------------------


def violations(c: Circuit) -> list[str]:
    """Everything wrong with ``c``; empty when it is a valid scalar-free circuit."""
    problems = []
    position = {gid: pos for pos, gid in enumerate(c.gates)}
    if c.output not in c.gates:
        problems.append(f"output g{c.output} is not defined")
    for gid, g in c.gates.items():
        if g.op == INPUT:
            if len(g.args) != 1 or not isinstance(g.args[0], int) or not 1 <= g.args[0] <= c.n:
                problems.append(f"g{gid}: INPUT must name one variable in 1..{c.n}")
            continue
        if g.op not in (ADD, MUL):
            problems.append(f"g{gid}: {g.op} gates are not allowed (circuits must be scalar-free)")
            continue
        if g.op == MUL and len(g.args) != 2:
            problems.append(f"g{gid}: MUL needs exactly two inputs, got {len(g.args)}")
        if g.op == ADD and not g.args:
            problems.append(f"g{gid}: ADD needs at least one input")
        for child in g.args:
            if child not in c.gates:
                problems.append(f"g{gid}: refers to undefined gate g{child}")
            elif position[child] >= position[gid]:
                problems.append(f"g{gid}: refers to g{child}, which is not defined before it")
    cycle = _find_cycle(c)
    if cycle:
        problems.append("cycle: " + " -> ".join(f"g{x}" for x in cycle))
    return problems


def _find_cycle(c: Circuit):
    colour = {}
    for root in c.gates:
        if root in colour:
            continue
        stack = [(root, iter(_children(c, root)))]
        path = [root]
        colour[root] = 1
        while stack:
            gid, it = stack[-1]
            child = next(it, None)
            if child is None:
                colour[gid] = 2
                stack.pop()
                path.pop()
            elif child not in c.gates:
                continue
            elif colour.get(child) == 1:
                return path[path.index(child) :] + [child]
            elif child not in colour:
                colour[child] = 1
                path.append(child)
                stack.append((child, iter(_children(c, child))))
    return None


def _children(c, gid):
    g = c.gates[gid]
    return () if g.op == INPUT else g.args


def validate(c: Circuit) -> bool:
    return not violations(c)


def require_valid(c: Circuit):
    problems = violations(c)
    if problems:
        raise ParameterError("invalid circuit: " + "; ".join(problems))


def degree(c: Circuit) -> int:
    """Syntactic degree: INPUT 1, ADD max, MUL sum."""
    deg = {}
    for gid in c._plan[0]:
        g = c.gates[gid]
        if g.op == INPUT:
            deg[gid] = 1
        elif g.op == ADD:
            deg[gid] = max(deg[a] for a in g.args)
        else:
            deg[gid] = deg[g.args[0]] + deg[g.args[1]]
    return deg[c.output]


def pad_output(c: Circuit, j: int) -> Circuit:
    """Multiply the output by j fresh variables x_{n+1}, ..., x_{n+j}."""
    if j < 0:
        raise ParameterError("j must be non-negative")
    if j == 0:
        return c
    gates = dict(c.gates)
    nxt = max(gates, default=0) + 1
    out = c.output
    for t in range(1, j + 1):
        gates[nxt] = Gate(INPUT, (c.n + t,))
        gates[nxt + 1] = Gate(MUL, (out, nxt))
        out = nxt + 1
        nxt += 2
    return Circuit(gates, out, c.n + j)


def evaluate_with(c: Circuit, values, add=operator.add, mul=operator.mul):
    """Evaluate over any ring given ``values[i]`` for x_i (a dict or 1-based callable)."""
    get = values if callable(values) else values.__getitem__
    val = {}
    for gid in c._plan[0]:
        g = c.gates[gid]
        if g.op == INPUT:
            val[gid] = get(g.args[0])
        elif g.op == ADD:
            val[gid] = reduce(add, (val[a] for a in g.args))
        else:
            val[gid] = mul(val[g.args[0]], val[g.args[1]])
    return val[c.output]


# -- randomized evaluation -------------------------------------------------------


@dataclass
class WeightedCircuit:
    """A circuit whose MUL gates are each followed by a nonzero scalar."""

    base: Circuit
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        if set(self.weights) != set(self.base.mul_gates()):
            raise ParameterError("every MUL gate needs exactly one weight")
        if any(w == 0 for w in self.weights.values()):
            raise ParameterError("weights must be nonzero")


def augment_with_random_scalars(c: Circuit, spec: FieldSpec, rng) -> WeightedCircuit:
    muls = c.mul_gates()
    w = gf2e.random_nonzero(spec, as_stream(rng), size=len(muls))
    return WeightedCircuit(c, {gid: int(x) for gid, x in zip(muls, w)})


def _evaluate_batch(c: Circuit, spec: FieldSpec, inputs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """inputs: (T, n, 2^k) per variable; weights: (T, #MUL).  Returns (T, 2^k)."""
    order, mul_index = c._plan
    val = {}
    for gid in order:
        g = c.gates[gid]
        if g.op == INPUT:
            val[gid] = inputs[:, g.args[0] - 1]
        elif g.op == ADD:
            acc = val[g.args[0]]
            for a in g.args[1:]:
                acc = acc ^ val[a]
            val[gid] = acc
        else:
            prod = ga.xor_convolve(spec, val[g.args[0]], val[g.args[1]])
            val[gid] = gf2e.scale_array(spec, weights[:, mul_index[gid]], prod)
    return val[c.output]


def evaluate(wc: WeightedCircuit, assignment: dict) -> AlgebraElem:
    """Evaluate the weighted circuit with x_i -> ``assignment[i]``, each gate once."""
    c = wc.base
    missing = [i for i in range(1, c.n + 1) if i not in assignment]
    if missing:
        raise ParameterError(f"no value for variables {missing}")
    first = assignment[1] if c.n else None
    if first is None:
        raise ParameterError("circuit has no variables")
    k, spec = first.k, first.spec
    for e in assignment.values():
        first._compatible(e)
    inputs = np.stack([assignment[i].coeffs for i in range(1, c.n + 1)])[None]
    weights = np.array([[wc.weights[gid] for gid in c.mul_gates()]], dtype=spec.dtype).reshape(1, -1)
    return AlgebraElem(k, spec, _evaluate_batch(c, spec, inputs, weights)[0])


def _draw(c: Circuit, k: int, spec: FieldSpec, stream: RngStream):
    gen = stream.generator
    v = gen.integers(0, 1 << k, size=c.n)
    w = gf2e.random_nonzero(spec, stream, size=len(c._plan[1]))
    return v, w


def _linear_inputs(v: np.ndarray, k: int, spec: FieldSpec) -> np.ndarray:
    """Stack one + basis(v) for an array of vectors: shape v.shape + (2^k,)."""
    out = np.zeros(v.shape + (1 << k,), dtype=spec.dtype)
    out[..., 0] = 1
    np.bitwise_xor.at(out.reshape(-1, 1 << k), (np.arange(v.size), v.reshape(-1)), 1)
    return out


def _trial_outcomes(c: Circuit, k: int, spec: FieldSpec, streams) -> np.ndarray:
    draws = [_draw(c, k, spec, s) for s in streams]
    v = np.array([d[0] for d in draws], dtype=np.int64).reshape(len(draws), c.n)
    w = np.array([d[1] for d in draws], dtype=spec.dtype).reshape(len(draws), -1)
    out = _evaluate_batch(c, spec, _linear_inputs(v, k, spec), w)
    return out.any(axis=-1)


def detect_multilinear_trial(c: Circuit, k: int, spec: FieldSpec, rng) -> bool:
    """One randomized trial; True certifies a multilinear term."""
    return bool(_trial_outcomes(c, k, spec, [as_stream(rng)])[0])


def detect_multilinear(c: Circuit, k: int, trials: int = DEFAULT_TRIALS, rng=None) -> bool:
    """Does the expansion of ``c`` contain a multilinear term of degree <= k?

    Never answers True wrongly.  If such a term exists, a False answer has
    probability at most (4/5)^trials.
    """
    require_valid(c)
    if trials < 1:
        raise ParameterError("trials must be positive")
    d = degree(c)
    if d > k:
        raise ParameterError(f"circuit degree {d} exceeds k={k}")
    spec = gf2e.field_for_k(k)
    stream = as_stream(rng)
    chunk = max(1, _BATCH_BUDGET >> k)
    for j in range(k + 1):
        cj = pad_output(c, j)
        for start in range(0, trials, chunk):
            streams = [stream.child("circuit", j, t) for t in range(start, min(trials, start + chunk))]
            if _trial_outcomes(cj, k, spec, streams).any():
                return True
    return False


# -- text format -----------------------------------------------------------------

_GATE_RE = re.compile(r"^g(\d+)\s*=\s*(\w+)\s*(.*)$")
_OUTPUT_RE = re.compile(r"^OUTPUT\s+g(\d+)$")


def parse_circuit(text: str) -> Circuit:
    gates = {}
    output = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if output is not None:
            raise FormatError("content after OUTPUT", lineno)
        m = _OUTPUT_RE.match(line)
        if m:
            output = int(m.group(1))
            continue
        m = _GATE_RE.match(line)
        if not m:
            raise FormatError(f"cannot parse {line!r}", lineno)
        gid, op, rest = int(m.group(1)), m.group(2).upper(), m.group(3).split()
        if gid in gates:
            raise FormatError(f"g{gid} defined twice", lineno)
        if op == INPUT:
            if len(rest) != 1 or not re.fullmatch(r"x\d+", rest[0]):
                raise FormatError("INPUT takes one variable x<i>", lineno)
            gates[gid] = Gate(INPUT, (int(rest[0][1:]),))
        elif op in (ADD, MUL):
            if not all(re.fullmatch(r"g\d+", t) for t in rest):
                raise FormatError(f"{op} operands must be gate ids g<id>", lineno)
            gates[gid] = Gate(op, tuple(int(t[1:]) for t in rest))
        else:
            raise FormatError(f"unknown gate type {op}", lineno)
    if output is None:
        raise FormatError("missing OUTPUT line")
    return Circuit(gates, output)


def format_circuit(c: Circuit) -> str:
    lines = [f"g{gid} = {g}" for gid, g in c.gates.items()]
    lines.append(f"OUTPUT g{c.output}")
    return "\n".join(lines) + "\n"
