"""Quick end-to-end check of the Python bindings."""

import json
import math
import os
import tempfile

import likert_efa_py as le


def main():
    corr = [[1.0, 0.5, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 1.0]]
    assert abs(le.kmo(corr) - 9 / 13) < 1e-10
    chi2, df = le.bartlett([[1.0, 0.5], [0.5, 1.0]], 101)
    assert df == 1 and abs(chi2 - 28.337) < 1e-2
    assert abs(le.mutual_information([[0.125, 0.375], [0.25, 0.25]]) - 0.03382) < 1e-4

    values, vectors = le.eig_sym([[2.0, 1.0], [1.0, 2.0]])
    assert math.isclose(values[0], 3.0) and math.isclose(values[1], 1.0)

    data = le.synth(respondents=202, seed=3)
    assert (data.n_respondents, data.n_items) == (202, 17)
    assert 0.0 < le.cronbach_alpha(data) < 1.0

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "survey.csv")
        data.to_csv(path)
        loaded, dropped = le.load_csv(path)
        assert dropped == 0 and loaded.rows() == data.rows()

    beta, clusters = le.cluster_items(data, 3, restarts=5)
    assert len(set(clusters.values())) == 3

    report = le.run_pipeline(data, {"seed": 1, "restarts": 5})
    assert report.retained == 3
    assert report.exact_match
    assert json.loads(report.to_json())["provenance"]["seed"] == 1
    assert "Factor composition" in report.text()

    fixture = le.synth(fixture="refinement", seed=0)
    trajectory = le.run_pipeline(fixture)
    assert len(trajectory.removed_items) == 3 and len(trajectory.final_items) == 17

    try:
        le.ResponseMatrix(["a", "a"], [[1, 2]])
    except ValueError as exc:
        assert "duplicate" in str(exc)
    else:
        raise AssertionError("duplicate item ids accepted")

    print(f"likert_efa_py {le.__version__}: smoke test passed (IB beta {beta})")


if __name__ == "__main__":
    main()
