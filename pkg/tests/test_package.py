import edge_powers

def test_version():
    assert edge_powers.__version__ == "0.1.0"
