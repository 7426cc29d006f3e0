"""One complete simulation run, scenario in, metrics out.

run() wires the full pipeline: resample -> distances -> aggregated
mesh (with connectivity screen) -> channel topology -> funding ->
per-epoch payment execution. The workload is derived only from the
seed, so different strategies face byte-identical payment streams.
"""

from meshpay import ExperimentConfig, generate_synthetic, run

scn = generate_synthetic(nodes=100, duration=21600.0, bbox=(650.0, 650.0), seed=3)

for strategy in ("cds", "ust", "baseline"):
    cfg = ExperimentConfig(
        strategy=strategy,
        nodes=100,
        payments_per_epoch=50,
        total_investment=100_000,
        seed=7,
    )
    res = run(cfg, scn, scenario_id="demo")
    print(f"{strategy:8s} channels={res.channels:4d} "
          f"success {res.success}/{res.total} ({res.success_rate:.1%})  "
          f"capacity-fail {res.fail_capacity}  mesh-fail {res.fail_mesh}")

# mesh failures match across strategies: that class depends only on
# node motion and the workload, not on where channels were opened
