"""
Sizing a photonic-crystal NS gate
=================================

Starting from the nonlinear index n2 of an MQW medium, we estimate the Kerr
rate chi, the flight time needed for a pi/2 phase, and how much shorter the
device gets when the light is slowed down inside a periodic stack.
"""

# %%
from kerr_nsgate import design_ns_gate, gaas_design_input
from kerr_nsgate.physics import chi3_si_to_esu

inp = gaas_design_input()
d = design_ns_gate(inp)

print(f"chi3            = {d.chi3:.4e} m C/V^3 ({chi3_si_to_esu(d.chi3):.3e} esu)")
print(f"chi             = {d.chi:.4e} 1/s")
print(f"flight time     = {d.tau_tof:.4e} s")
print(f"bulk length     = {d.homogeneous_length_l * 1e3:.3f} mm")

# %%
# In the crystal the pulse sits in band 4.  Its group velocity is about a
# tenth of c, and most of the field energy lives in the high-index layer.
print(f"band {d.band}, v_g/c = {d.v_g / 3.00e8:.4f}")
print(f"P_A : P_B = 1 : {d.p_b / d.p_a:.2f}")

# %%
# Only the time spent in the Kerr layer counts, so the required length is
# tau * v_g * (P_A + P_B) / P_B.
print(f"crystal length  = {d.crystal_length_l_phc * 1e3:.3f} mm")
print(f"periods, layers = {d.period_count}, {d.layer_count}")
print(f"shrink factor   = {d.homogeneous_length_l / d.crystal_length_l_phc:.2f}")

# %%
# The linear band picture is safe only while chi is tiny compared with omega.
print(f"(8/9) chi / omega = {d.smallness_ratio:.3e}")
print("warnings:", list(d.warnings) or "none")
