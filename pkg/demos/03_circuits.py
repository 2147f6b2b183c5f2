"""The general detector: multilinear terms in scalar-free arithmetic circuits.

Run with ``python3 demos/03_circuits.py``.
"""

from kpath import gf2e
from kpath.circuit import detect_multilinear, detect_multilinear_trial, parse_circuit, product_circuit
from kpath.oracle import expand_circuit, expand_weighted_mod2
from kpath.rng import RngStream

# %% x1*x2 + x3^2 has one multilinear term; x1^2 * x2 has none.
mixed = parse_circuit(
    """
    g1 = INPUT x1
    g2 = INPUT x2
    g3 = INPUT x3
    g4 = MUL g1 g2
    g5 = MUL g3 g3
    g6 = ADD g4 g5
    OUTPUT g6
    """
)
square = parse_circuit("g1 = INPUT x1\ng2 = INPUT x2\ng3 = MUL g1 g1\ng4 = MUL g3 g2\nOUTPUT g4\n")
for name, c in (("x1*x2 + x3^2", mixed), ("x1^2 * x2", square)):
    terms = sorted(str(m) for m in expand_circuit(c))
    print(f"{name}: expansion {terms}, detector says {detect_multilinear(c, 3, rng=1)}")

# %% Per-trial success on a plain product of k distinct variables.
spec = gf2e.field_for_k(4)
c = product_circuit([1, 2, 3, 4])
hits = sum(detect_multilinear_trial(c, 4, spec, RngStream(0, ("demo", t))) for t in range(2000))
print(f"x1 x2 x3 x4: per-trial rate {hits / 2000:.3f}")

# %% Lower-degree terms are lifted by multiplying in fresh variables.
print("x1 with k=4:", detect_multilinear(product_circuit([1]), 4, rng=2))

# %% Reaching the same MUL gate twice through additions doubles its
# contribution, which cancels in characteristic two.
dup = parse_circuit(
    """
    g1 = INPUT x1
    g2 = INPUT x2
    g3 = MUL g1 g2
    g4 = MUL g1 g1
    g5 = ADD g3 g4
    g6 = ADD g3 g4
    g7 = ADD g5 g6
    OUTPUT g7
    """
)
print("integer expansion:", sorted(str(m) for m in expand_circuit(dup)))
print("weighted mod-2 expansion keys:", len(expand_weighted_mod2(dup)), "->", detect_multilinear(dup, 2, rng=3))
