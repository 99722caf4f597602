from saris.streams import mix_seed, substream


def test_mix_seed_deterministic():
    assert mix_seed(42, "deploy-map", 3, 4) == mix_seed(42, "deploy-map", 3, 4)


def test_mix_seed_sensitive_to_every_key():
    base = mix_seed(42, "deploy-map", 3, 4)
    assert mix_seed(43, "deploy-map", 3, 4) != base
    assert mix_seed(42, "rate", 3, 4) != base
    assert mix_seed(42, "deploy-map", 4, 3) != base


def test_mix_seed_accepts_floats():
    assert mix_seed(1, 2.5) == mix_seed(1, 2.5)
    assert mix_seed(1, 2.5) != mix_seed(1, 2.0)


def test_substreams_replay_and_diverge():
    a = substream(9, "cell", 0).random(4)
    b = substream(9, "cell", 0).random(4)
    c = substream(9, "cell", 1).random(4)
    assert (a == b).all()
    assert (a != c).any()
