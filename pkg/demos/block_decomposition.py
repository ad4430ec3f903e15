"""Orbit census on Q/lQ and the block sum for B2 and G2.

Each W-orbit on Q/lQ has a parabolic stabilizer W_J.  Weighting every orbit
by the sign multiplicity of W_J on Q/(h+1)Q and summing gives a count that
matches the Catalan number Cat_W(l(h+1) - h).
"""
import warnings

from rcatalan import block_dimension_sum, build_root_system, coxeter_catalan, enumerate_orbits, verify_main_identity

ELL = 7

for name in ["B2", "G2"]:
    rs = build_root_system(name)
    h = rs.coxeter_number
    print(f"{name}: |W| = {rs.weyl_order}, h = {h}, exponents {rs.exponents}")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        census = enumerate_orbits(rs, ELL)
    for ptype, count in census.sorted_entries():
        print(f"  stabilizer {str(ptype):10s} orbits {count}")

    total, blocks = block_dimension_sum(rs, ELL)
    for b in blocks:
        print(f"  {str(b.stabilizer_type):10s} x{b.kreweras:<3d} dim {b.dr_dim}")
    print(f"  block sum {total}, Cat_W({ELL * (h + 1) - h}) = {coxeter_catalan(rs, ELL * (h + 1) - h)}")

    report = verify_main_identity(rs, ELL)
    print(f"  verdict: {report.verdict}\n")
