"""
Winding numbers through truncated Toeplitz compressions
=======================================================

Compressing multiplication by exp(i k t) to a truncated Hardy space
gives a projector pair whose relative index is the winding number k.
The window has to be wide enough relative to k, and the admissibility
check refuses anything else.
"""

from fockindex.errors import AdmissibilityError
from fockindex.pairs import toeplitz_winding

window = 64
for k in range(-5, 6):
    print(f"k = {k:+d}  ->  recovered {toeplitz_winding(window, k):+d}")

# the symbol must stay well inside the window
try:
    toeplitz_winding(10, 6)
except AdmissibilityError as exc:
    print("refused:", exc)
