import random

from h4matroid.reconstruct import reconstruct_from_orthoframes


def test_reconstruction_matches_rank_oracle(m):
    rebuilt = reconstruct_from_orthoframes([f.points for f in m.orthoframes])
    oracle = m.flats.as_sets()
    assert set(rebuilt) == set(oracle)
    for cls, flats in oracle.items():
        assert set(rebuilt[cls]) == flats, cls
        assert len(rebuilt[cls]) == len(flats), cls


def test_reconstruction_is_label_independent(m):
    rng = random.Random(11)
    relabel = list(range(60))
    rng.shuffle(relabel)
    frames = [tuple(relabel[p] for p in f.points) for f in m.orthoframes]
    rng.shuffle(frames)
    rebuilt = reconstruct_from_orthoframes(frames)
    for cls, flats in m.flats.as_sets().items():
        expected = {tuple(sorted(relabel[p] for p in f)) for f in flats}
        assert set(rebuilt[cls]) == expected, cls
