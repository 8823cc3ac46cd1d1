"""
A path that keeps away from the identity
========================================

Build the five-segment path from ``g`` to the terminal ``v(k)``, then check
it from scratch.
"""

from bvgroup import TEST_SCALE, build_path, n_carets, verify_certificate
from bvgroup.generators import eval_prefixes, eval_word

cert = build_path("x0 s1 x1^-1 t1", TEST_SCALE)

# segment lengths; w2 and w4 carry the long powers of x0
print(cert.segment_lengths())
print("w4 =", cert.w4)

# caret counts along the path: they climb fast and never come back near zero
g = eval_word(cert.g_word)
carets = [n_carets(d) for d in eval_prefixes(g, cert.word)]
print("min caret count after w1:", min(carets[len(cert.w1):]))
print("max caret count:", max(carets))

# every claim is rechecked independently of the builder
report = verify_certificate(cert)
print(report)
print("ok" if report.ok else "FAILED")
