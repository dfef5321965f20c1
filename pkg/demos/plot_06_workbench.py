"""
Instance files and panels
=========================

Structures live in JSON files.  Generators write them from a seed, the
loader validates them, and panels run checks with a fixed exit status.
The same steps are available from the shell as ``nonunital gen`` and
``nonunital check``.
"""

from nonunital.workbench import dump_instance, generate, loads_instance, run

inst = generate("dual_pair", seed=0, dim=2, variant="canonical", base="k")
text = dump_instance(inst)
print(text[:200], "...")

again = loads_instance(text)
print("round trip identical:", dump_instance(again) == text)

res = run("comatrix_context", again)
print(res)
print("exit code:", res.exit_code)

res = run("dorroh", generate("precoring", seed=3, dim=1))
print("fragment:", sorted(res.fragment.structures))
