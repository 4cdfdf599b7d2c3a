"""
LCS as an LCIS
==============

Replacing every symbol of the second string by its positions in the first
string, listed in decreasing order, turns common subsequences into
increasing ones.
"""
from lcislab import lcs_bruteforce, lcs_to_lcis, lis_length

a = [ord(c) for c in "GATTACA"]
b = [ord(c) for c in "TACTAGA"]
(out,) = lcs_to_lcis([a, b])
print("positions sequence:", out)
print("LIS", lis_length(out), "LCS", lcs_bruteforce([a, b]))
