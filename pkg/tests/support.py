"""Helpers shared by the lattice tests and the acceptance suite."""
import sympy as sp
from sympy.polys.matrices import DomainMatrix

import golden
from nsdivisor.exterior import pair_index
from nsdivisor.nslattice import constraint_polynomials


def symbols_of(tau):
    return tuple(sp.Symbol(x) for x in tau.table.names)


def computed_rows_reduced(tau):
    """Constraint rows restricted to the 14 reduced coordinates (a36 column dropped)."""
    _, rows = constraint_polynomials(tau)
    drop = pair_index(3).index((3, 6))
    return [[sp.sympify(str(c)) for k, c in enumerate(row) if k != drop] for row in rows]


def transcribed_rows(equations, syms):
    loc = {str(s): s for s in syms}
    return [[sp.sympify(eq.get(k, "0").replace("DET", f"({golden.DET})"), locals=loc)
             for k in range(1, 15)] for eq in equations]


def rank_over_fraction_field(rows, syms):
    field = sp.QQ.frac_field(*syms)
    width = len(rows[0])
    m = DomainMatrix([[field.from_sympy(x) for x in r] for r in rows], (len(rows), width), field)
    return m.rank()


def same_row_space(a, b, syms):
    ra, rb = rank_over_fraction_field(a, syms), rank_over_fraction_field(b, syms)
    return ra == rb == rank_over_fraction_field(a + b, syms), (ra, rb)
