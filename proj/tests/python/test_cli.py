import json
import os
import subprocess

BIN = os.environ["RSDKIT_BIN"]

OPPOSED = json.dumps(
    {"alternatives": ["a", "b"], "agents": [{"ranking": [["a"], ["b"]]}, {"ranking": [["b"], ["a"]]}]}
)

OPPOSED_HOUSES = json.dumps(
    {"houses": ["h1", "h2"], "agents": [{"ranking": ["h1", "h2"]}, {"ranking": ["h2", "h1"]}]}
)

TWO_SINGLETONS = json.dumps({"universe": ["u1", "u2"], "subsets": [["u1"], ["u2"]]})


def run(args, stdin="", env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *args], input=stdin, capture_output=True, text=True, env=full_env)


def test_lottery_stdin():
    r = run(["lottery"], OPPOSED)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["lottery"] == {"a": "1/2", "b": "1/2"}


def test_lottery_file_input(tmp_path):
    path = tmp_path / "profile.json"
    path.write_text(OPPOSED)
    r = run(["lottery", "-i", str(path), "--method", "enum"])
    assert r.returncode == 0
    assert json.loads(r.stdout)["denominator_check"] == "2"


def test_lottery_table():
    r = run(["lottery", "--format", "table", "--float"], OPPOSED)
    assert r.returncode == 0
    assert "alternative" in r.stdout
    assert "1/2" in r.stdout
    assert "0.5" in r.stdout


def test_sample_reproducible():
    a = run(["lottery", "--method", "sample", "--samples", "50", "--seed", "9"], OPPOSED)
    b = run(["lottery", "--method", "sample", "--samples", "50", "--seed", "9"], OPPOSED)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_bad_json_is_exit_2():
    r = run(["lottery"], "{nope")
    assert r.returncode == 2
    assert r.stderr


def test_bad_flag_is_exit_2():
    r = run(["lottery", "--bogus"], OPPOSED)
    assert r.returncode == 2


def test_missing_subcommand_is_exit_2():
    assert run([], "").returncode == 2


def test_guard_is_exit_3():
    r = run(["lottery", "--method", "enum", "--guard", "1"], OPPOSED)
    assert r.returncode == 3
    assert r.stderr
    # the default memoized method honours the same guard
    r = run(["lottery", "--guard", "1"], OPPOSED)
    assert r.returncode == 3


def test_env_guard_override():
    r = run(["lottery", "--method", "enum"], OPPOSED, env={"RSDKIT_GUARD_N": "1"})
    assert r.returncode == 3
    r = run(["lottery", "--method", "enum", "--guard", "5"], OPPOSED, env={"RSDKIT_GUARD_N": "1"})
    assert r.returncode == 0


def test_support_witness():
    r = run(["support", "--alternative", "a", "--witness"], OPPOSED)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["member"] is True
    assert doc["permutation"] == [1, 2]

    plain = json.loads(run(["support"], OPPOSED).stdout)
    assert plain["support"] == ["a", "b"]


def test_assign_and_check(tmp_path):
    r = run(["assign"], OPPOSED_HOUSES)
    assert r.returncode == 0
    assert json.loads(r.stdout)["matrix"] == [["1/1", "0/1"], ["0/1", "1/1"]]

    check = tmp_path / "sigma.json"
    check.write_text(json.dumps({"assignment": ["h2", "h1"]}))
    r = run(["assign", "--check-assignment", str(check)], OPPOSED_HOUSES)
    assert r.returncode == 0
    assert json.loads(r.stdout)["member"] is False


def test_recover_set_cover():
    r = run(["recover", "set-cover"], TWO_SINGLETONS)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["match"] is True
    assert doc["recovered"] == ["0/1", "1/1"]
    assert doc["unknowns"] == ["x_1", "x_2"]


def test_recover_assignment_table():
    r = run(["recover", "assignment", "--agent", "1", "--format", "table"], OPPOSED_HOUSES)
    assert r.returncode == 0
    assert "match: yes" in r.stdout
    assert "q_0" in r.stdout


def test_reduce_bipartite():
    graph = json.dumps({"left": ["s1"], "right": ["t1"], "edges": [["s1", "t1"]]})
    r = run(["reduce", "bipartite"], graph)
    assert r.returncode == 0
    assert json.loads(r.stdout)["distinguished_house"] == "h"


def test_reduce_set_cover_validation():
    degenerate = json.dumps({"universe": ["u1", "u2"], "subsets": [[]]})
    r = run(["reduce", "set-cover", "--k", "1"], degenerate)
    assert r.returncode == 2
    assert r.stderr
