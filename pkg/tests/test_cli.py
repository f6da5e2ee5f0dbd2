import subprocess
import sys


def run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "symplex.cli", *args],
                          capture_output=True, text=True, cwd=cwd)


def test_generate_and_multiplicity(tmp_path):
    r = run_cli(["generate", "sierpinski", "0..2", "--out", str(tmp_path)],
                cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    assert (tmp_path / "sierpinski_2.action.json").exists()
    out = tmp_path / "mult.csv"
    r = run_cli(["multiplicity", "--action", str(tmp_path / "sierpinski_2.action.json"),
                 "--n", "1", "--rho", "all", "--out", str(out)], cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "rho,degree,m,m2_num,m2_den,kernel_dim"
    assert len(lines) == 4
    total = sum(int(line.split(",")[5]) for line in lines[1:])
    assert total == 4  # first homology rank of the level-2 fractal


def test_unknown_family_exits_two(tmp_path):
    r = run_cli(["generate", "who-knows", "1", "--out", str(tmp_path)], cwd=tmp_path)
    assert r.returncode == 2
    assert "error" in r.stderr


def test_malformed_action_file_exits_two(tmp_path):
    bad = tmp_path / "bad.action.json"
    bad.write_text("{")
    r = run_cli(["multiplicity", "--action", str(bad), "--n", "0", "--out", "-"],
                cwd=tmp_path)
    assert r.returncode == 2


def test_power_cap_exits_one(tmp_path):
    run_cli(["generate", "sierpinski", "1", "--out", str(tmp_path)], cwd=tmp_path)
    r = run_cli(["moments", "--action", str(tmp_path / "sierpinski_1.action.json"),
                 "--n", "1", "--rho", "0", "--rmax", "99", "--out", "-"],
                cwd=tmp_path)
    assert r.returncode == 1


def test_criterion_verdicts(tmp_path):
    r = run_cli(["criterion", "--family", "sierpinski", "--range", "2..4",
                 "--H", "trivial", "--Cmax", "3", "--out", str(tmp_path / "c.csv")],
                cwd=tmp_path)
    assert r.returncode == 0
    assert r.stdout.strip().splitlines()[-1] == "criterion: consistent"
    r = run_cli(["criterion", "--family", "prism-rotation", "--range", "3..5",
                 "--H", "trivial", "--Cmax", "2", "--out", str(tmp_path / "p.csv")],
                cwd=tmp_path)
    assert r.returncode == 0
    assert r.stdout.strip().splitlines()[-1] == "criterion: inconsistent"


def test_reciprocity_cross_group(tmp_path):
    run_cli(["generate", "cycle-rotation", "12", "3", "--out", str(tmp_path)],
            cwd=tmp_path)
    action = str(tmp_path / "cycle_rotation_12_3.action.json")
    r = run_cli(["reciprocity", "--G", "S3", "--H", "C3", "--action", action,
                 "--n", "1", "--out", "-"], cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    assert "reciprocity: equal" in r.stdout


def test_unimodular_check_line(tmp_path):
    run_cli(["generate", "prism-rotation", "4", "--out", str(tmp_path)], cwd=tmp_path)
    r = run_cli(["unimodular-check", "--action",
                 str(tmp_path / "prism_rotation_4.action.json"), "--depth", "2"],
                cwd=tmp_path)
    assert r.returncode == 0
    assert r.stdout.strip() == "unimodular: pass max_violation=0/1"


def test_repeated_runs_byte_identical(tmp_path):
    run_cli(["generate", "sierpinski", "2", "--out", str(tmp_path)], cwd=tmp_path)
    action = str(tmp_path / "sierpinski_2.action.json")
    outputs = []
    for name in ["a.csv", "b.csv"]:
        out = tmp_path / name
        r = run_cli(["converge", "--family", "sierpinski", "--range", "1..3",
                     "--r", "1", "--out", str(out)], cwd=tmp_path)
        assert r.returncode == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    # and the spectrum dump too
    outputs = []
    for name in ["s1.csv", "s2.csv"]:
        out = tmp_path / name
        run_cli(["spectrum", "--action", action, "--n", "1", "--rho", "1",
                 "--out", str(out)], cwd=tmp_path)
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_distance_output(tmp_path):
    run_cli(["generate", "sierpinski", "1", "--out", str(tmp_path)], cwd=tmp_path)
    run_cli(["generate", "sierpinski", "2", "--out", str(tmp_path)], cwd=tmp_path)
    r = run_cli(["distance",
                 "--action-a", str(tmp_path / "sierpinski_1.action.json"),
                 "--root-a", "0",
                 "--action-b", str(tmp_path / "sierpinski_2.action.json"),
                 "--root-b", "0", "--rmax", "6"], cwd=tmp_path)
    assert r.returncode == 0
    assert r.stdout.startswith("distance: status=")


def test_induce_writes_bundle(tmp_path):
    run_cli(["generate", "cycle-rotation", "6", "3", "--out", str(tmp_path)],
            cwd=tmp_path)
    r = run_cli(["induce", "--G", "S3", "--H", "C3",
                 "--action", str(tmp_path / "cycle_rotation_6_3.action.json"),
                 "--out", str(tmp_path / "ind")], cwd=tmp_path)
    assert r.returncode == 0, r.stderr
    from symplex.io import load_action
    induced = load_action(str(tmp_path / "ind.action.json"))
    assert induced.complex.vertex_count == 12
    assert induced.group.order == 6


def test_meta_sidecar(tmp_path):
    run_cli(["generate", "sierpinski", "1", "--out", str(tmp_path)], cwd=tmp_path)
    out = tmp_path / "m.csv"
    r = run_cli(["multiplicity", "--action", str(tmp_path / "sierpinski_1.action.json"),
                 "--n", "1", "--out", str(out), "--meta"], cwd=tmp_path)
    assert r.returncode == 0
    assert (tmp_path / "m.csv.meta.json").exists()
