"""Print the first few Garland polynomials and their images for n = 2."""

from affschur.garland import lambda_poly, psi_lambda

for k in range(1, 5):
    print(f"Lambda_{k} =", lambda_poly(k))
    print("  image    =", psi_lambda(k, 1, 1, 2))
