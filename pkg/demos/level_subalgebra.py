"""Level-1 subalgebra at p = 2: basis counts and the realization map."""

from affschur.core import PeriodicMatrix as M
from affschur.hyper import element
from affschur.kstab import phi_h
from affschur.modp import ModPContext, basis_size, reduce

ctx = ModPContext(2, 1)
for w in range(3):
    print(f"window {w}: {basis_size(2, ctx, w)} basis elements")

e = reduce(element(M.E(2, 1, 2)), 2)
f = reduce(element(M.E(2, 2, 1)), 2)
print("phi(EF)      =", phi_h(e * f, ctx))
print("phi(E)phi(F) =", phi_h(e, ctx) * phi_h(f, ctx))
