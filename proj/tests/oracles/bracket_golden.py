# Regenerates tests/data/bracket_golden.json with sympy.
import json
import sys

import sympy

u = sympy.symbols("u")


def bracket(q):
    q4 = q**4
    expr = (q4 * (1 - u) ** (2 * q) - (1 - u) ** (q + 1) + (q4 - 1) * (1 - u) ** q
            - (1 - u) ** (q - 1) + q4)
    poly = sympy.Poly(sympy.expand(expr), u)
    return [str(poly.coeff_monomial(u**i)) for i in range(2 * q + 1)]


out = {str(q): bracket(q) for q in (3, 5, 7, 51)}
json.dump(out, sys.stdout, indent=1)
print()
