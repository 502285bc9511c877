import json
from fractions import Fraction

import pytest

from lexmatch import (
    GenSpec,
    Instance,
    InvalidInputError,
    Matching,
    NpHardRegimeError,
    classify,
    generate,
    solve_dispatch,
)
from lexmatch.bench import bench, bench_one, records_to_csv
from lexmatch.cli import main
from lexmatch.serialize import (
    dump_instance,
    dump_matching,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    load_matching,
)

from conftest import random_instances


class TestGenerate:
    @pytest.mark.parametrize(
        "kind,check",
        [
            ("ranked_isometric", lambda f: f.ranked and f.isometric and f.strict),
            ("ranked", lambda f: f.ranked),
            ("strict", lambda f: f.strict and not f.ranked),
            ("weak", lambda f: not f.strict),
            (
                "weak_ranked_isometric",
                lambda f: f.weakly_ranked and f.isometric and not f.strict,
            ),
        ],
    )
    def test_kinds_have_their_flags(self, kind, check):
        for seed in range(5):
            inst = generate(GenSpec(kind=kind, n=6, m=3, seed=seed))
            assert check(classify(inst)), (kind, seed)

    def test_deterministic_per_spec(self):
        spec = GenSpec(kind="ranked", n=7, m=3, seed=42)
        assert generate(spec) == generate(spec)

    def test_seed_changes_output(self):
        a = generate(GenSpec(kind="ranked", n=7, m=3, seed=0))
        b = generate(GenSpec(kind="ranked", n=7, m=3, seed=1))
        assert a != b

    def test_value_max_respected(self):
        inst = generate(GenSpec(kind="ranked_isometric", n=2, m=2, value_max=4))
        assert all(1 <= x <= 4 for row in inst.student_values for x in row)

    def test_uniform_capacities(self):
        inst = generate(
            GenSpec(kind="ranked", n=6, m=3, capacity_mode="uniform", capacity=3)
        )
        assert inst.capacities == (3, 3, 3)

    def test_random_capacities_feasible(self):
        for seed in range(10):
            inst = generate(
                GenSpec(kind="ranked", n=6, m=3, seed=seed, capacity_mode="random")
            )
            assert sum(inst.capacities) >= inst.n
            assert all(1 <= b <= inst.n for b in inst.capacities)

    @pytest.mark.parametrize(
        "spec",
        [
            GenSpec(kind="lattice", n=3, m=2),
            GenSpec(kind="ranked", n=2, m=3),
            GenSpec(kind="strict", n=1, m=1),
            GenSpec(kind="ranked", n=4, m=2, capacity_mode="uniform"),
            GenSpec(kind="ranked", n=4, m=2, capacity_mode="uniform", capacity=1),
            GenSpec(kind="ranked_isometric", n=4, m=4, value_max=10),
        ],
    )
    def test_impossible_specs_rejected(self, spec):
        with pytest.raises(InvalidInputError):
            generate(spec)


class TestSerialize:
    def test_instance_round_trip_bit_exact(self):
        inst = Instance.build(
            [["1/3", 2], ["7/2", "1/6"]],
            [[5, "2/7"], ["9/4", 1]],
            capacities=[1, 2],
        )
        assert load_instance(dump_instance(inst)) == inst

    def test_random_round_trips(self):
        for inst in random_instances("weak", seed=91, count=10, n_max=6, m_max=3, n_min=2):
            assert load_instance(dump_instance(inst)) == inst

    def test_integers_emitted_plain(self):
        inst = Instance.build([[2], [1]], [[4, 3]])
        data = instance_to_dict(inst)
        assert data["student_values"] == [[2], [1]]
        assert data["capacities"] == [2]

    def test_default_capacities_applied_when_omitted(self):
        inst = instance_from_dict(
            {"student_values": [[2], [1]], "college_values": [[4, 3]]}
        )
        # a single college must be able to hold everyone
        assert inst.capacities == (2,)

    def test_matching_round_trip_with_unmatched(self):
        mu = Matching([0, None, 1])
        assert load_matching(dump_matching(mu)) == mu

    @pytest.mark.parametrize(
        "payload",
        [
            "not json",
            '{"college_values": [[1]]}',
            '{"student_values": [[1.5]], "college_values": [[1]]}',
            '{"student_values": [[true]], "college_values": [[1]]}',
            '{"student_values": [["x"]], "college_values": [[1]]}',
        ],
    )
    def test_bad_instance_payloads(self, payload):
        with pytest.raises(InvalidInputError):
            load_instance(payload)

    @pytest.mark.parametrize(
        "payload", ["[]", '{"assignment": [0, 1.5]}', '{"assignment": [true]}']
    )
    def test_bad_matching_payloads(self, payload):
        with pytest.raises(InvalidInputError):
            load_matching(payload)


class TestDispatch:
    def test_routes_by_structure(self, ref_instance):
        assert solve_dispatch(ref_instance).algorithm == "fast"
        ranked = generate(GenSpec(kind="ranked", n=5, m=3, seed=2))
        assert solve_dispatch(ranked).algorithm == "fast_gen"
        strict = generate(GenSpec(kind="strict", n=5, m=2, seed=2))
        assert solve_dispatch(strict).algorithm == "fast_const"

    def test_weak_instances_are_refused(self):
        inst = generate(GenSpec(kind="weak", n=4, m=3, seed=0))
        with pytest.raises(NpHardRegimeError):
            solve_dispatch(inst)

    def test_oracle_is_explicit_only(self):
        inst = generate(GenSpec(kind="weak", n=4, m=2, seed=0))
        report = solve_dispatch(inst, algo="oracle")
        assert report.algorithm == "oracle"

    def test_auto_never_picks_an_inadmissible_solver(self):
        # whatever auto picks must run without a not-admissible rejection
        for kind in ("ranked_isometric", "ranked", "strict", "weak"):
            for inst in random_instances(kind, seed=93, count=10, n_max=6, m_max=3, n_min=2):
                try:
                    solve_dispatch(inst)
                except NpHardRegimeError:
                    continue


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestCli:
    def test_solve_auto(self, tmp_path, capsys, ref_instance):
        path = _write(tmp_path, "inst.json", dump_instance(ref_instance))
        assert main(["solve", "--instance", path]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["algorithm"] == "fast"
        assert out["matching"]["assignment"] == [0, 1, 1, 1]
        assert out["leximin"] == ["3", "4", "9", "16", "100", "100"]

    def test_verify_reports_blocking_pair(self, tmp_path, capsys, ref_instance):
        inst = _write(tmp_path, "inst.json", dump_instance(ref_instance))
        mu = _write(tmp_path, "mu.json", dump_matching(Matching([0, 1, 0, 1])))
        assert main(["verify", "--instance", inst, "--matching", mu]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["stable"] is False
        assert out["blocking_pair"] == {
            "student": 1,
            "college": 0,
            "displaced_student": 2,
        }

    def test_enumerate_complete(self, tmp_path, capsys, ref_instance):
        path = _write(tmp_path, "inst.json", dump_instance(ref_instance))
        assert main(["enumerate", "--instance", path, "--complete"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["count"] == 3

    def test_fairness(self, tmp_path, capsys, ref_instance):
        inst = _write(tmp_path, "inst.json", dump_instance(ref_instance))
        mu = _write(tmp_path, "mu.json", dump_matching(Matching([0, 1, 1, 1])))
        assert main(["fairness", "--instance", inst, "--matching", mu]) == 0
        out = json.loads(capsys.readouterr().out)
        assert out["E_total"] == "160" and out["ef1_colleges"] is True

    def test_gen_round_trip(self, capsys):
        assert main(["gen", "--kind", "ranked", "--n", "5", "--m", "2", "--seed", "7"]) == 0
        printed = load_instance(capsys.readouterr().out)
        assert printed == generate(GenSpec(kind="ranked", n=5, m=2, seed=7))

    def test_reduce_subset_sum(self, tmp_path, capsys):
        path = _write(tmp_path, "in.json", json.dumps({"integers": [1, 2], "target": 3}))
        assert main(["reduce", "--from", "subset-sum", "--input", path]) == 0
        inst = load_instance(capsys.readouterr().out)
        assert (inst.n, inst.m) == (4, 3)

    def test_bench_csv(self, capsys):
        assert (
            main(["bench", "--algo", "fast", "--sizes", "20x3,30x3", "--repeats", "2"])
            == 0
        )
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("algorithm,n,m,seed")
        assert len(lines) == 1 + 2 * 2

    def test_exit_code_np_hard(self, tmp_path, capsys):
        inst = generate(GenSpec(kind="weak", n=4, m=3, seed=0))
        path = _write(tmp_path, "inst.json", dump_instance(inst))
        assert main(["solve", "--instance", path]) == 3

    def test_exit_code_invalid(self, tmp_path):
        path = _write(tmp_path, "inst.json", "{broken")
        assert main(["solve", "--instance", path]) == 2
        assert main(["solve", "--instance", str(tmp_path / "missing.json")]) == 2

    def test_exit_code_infeasible(self, tmp_path):
        inst = Instance.build([[5, 4]], [[7], [6]], capacities=[1, 1])
        path = _write(tmp_path, "inst.json", dump_instance(inst))
        assert main(["solve", "--instance", path, "--algo", "oracle"]) == 4

    def test_exit_code_budget(self, tmp_path):
        inst = generate(GenSpec(kind="weak", n=8, m=3, seed=0))
        path = _write(tmp_path, "inst.json", dump_instance(inst))
        assert (
            main(["enumerate", "--instance", path, "--budget", "10"]) == 5
        )


class TestBench:
    def test_deterministic_apart_from_wall_time(self):
        a = bench(["fast"], [(20, 3)], repeats=2, seed=0)
        b = bench(["fast"], [(20, 3)], repeats=2, seed=0)
        strip = lambda recs: [
            (r.algorithm, r.n, r.m, r.seed, r.steps, r.peak_candidates) for r in recs
        ]
        assert strip(a) == strip(b)

    def test_sorted_output(self):
        records = bench(["fast_gen", "fast"], [(30, 3), (20, 3)], repeats=1)
        keys = [(r.algorithm, r.n) for r in records]
        assert keys == sorted(keys)

    def test_fast_const_needs_two_colleges(self):
        with pytest.raises(InvalidInputError):
            bench_one("fast_const", 10, 3)

    def test_csv_shape(self):
        records = bench(["fast"], [(15, 2)])
        text = records_to_csv(records)
        lines = text.strip().splitlines()
        assert len(lines) == 2
        assert len(lines[1].split(",")) == 7
