"""Parse a ladder description, print it back, expand it."""

from qtouch.contfrac import stable_expansion
from qtouch.dsl import DSLError, format_spec, parse_spec, to_cfspec

text = """
# Schroeder-type ladder with a free shift
b = 1 + v;
a(i) = (1 - q^i)*(1 - q^(i + d - 1))*v;
param d = 2
"""
doc = parse_spec(text)
print(format_spec(doc))
series = stable_expansion(to_cfspec(doc), 3).series
for k, c in enumerate(series.coeffs):
    print(f"v^{k}: {c}")

# errors carry a line and column
try:
    parse_spec("b = 1+v;\na(i) = (1-q^i*v;")
except DSLError as e:
    print(e)
