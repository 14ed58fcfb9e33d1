"""Two imperfect scorers are better than one.

Runs two simulated scorers with different window counts and noise over
the same clips, localizes from each alone, then fuses their score
series (union of window geometries, nearest-center alignment, mean
confidence) and localizes from the fused series.  Classification
probabilities fuse the same way, by plain averaging.
"""

from pnrkit import (
    ScorerNoiseModel,
    SimConfig,
    WindowingConfig,
    fuse_oscc,
    fuse_pnr,
    gen_dataset,
    oscc_accuracy,
    pnr_mae,
    select_pnr,
    simulate_oscc,
    simulate_scores,
)


def main():
    ds = gen_dataset(SimConfig(n_clips=5_000, seed=8))
    scorer_a = simulate_scores(
        ds, WindowingConfig(num_windows=32), ScorerNoiseModel(hit_alpha=7.0), seed=81
    )
    scorer_b = simulate_scores(
        ds, WindowingConfig(num_windows=16), ScorerNoiseModel(hit_beta=3.0), seed=82
    )
    fused = {c: fuse_pnr([scorer_a[c], scorer_b[c]], ds.clips[c]) for c in ds.clips}

    print("localization MAE (s)")
    for label, scores in (("scorer A (N=32)", scorer_a), ("scorer B (N=16)", scorer_b),
                          ("fused", fused)):
        preds = {c: select_pnr(scores[c], ds.clips[c]) for c in ds.clips}
        print(f"  {label:<16} {pnr_mae(preds, ds).headline:.4f}")

    probs_a = simulate_oscc(ds, ScorerNoiseModel(oscc_flip_prob=0.2), seed=91)
    probs_b = simulate_oscc(ds, ScorerNoiseModel(oscc_flip_prob=0.2), seed=92)
    fused_probs = {c: fuse_oscc([probs_a[c], probs_b[c]]) for c in probs_a}

    print("\nclassification accuracy")
    for label, probs in (("scorer A", probs_a), ("scorer B", probs_b), ("fused", fused_probs)):
        calls = {c: p >= 0.5 for c, p in probs.items()}
        print(f"  {label:<16} {oscc_accuracy(calls, ds).headline:.4f}")


if __name__ == "__main__":
    main()
