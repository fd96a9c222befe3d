import csv

import pytest

from chipmunkring import codec, hots
from chipmunkring.cli import main

SEED0 = "00" * 32
SEED1 = "01" * 32
SEED2 = "02" * 32


@pytest.fixture()
def workspace(tmp_path):
    """Two key pairs, a message file, and a signed ring signature."""
    for name, seed in (("alice", SEED0), ("bob", SEED1)):
        assert main(["keygen", "--out", str(tmp_path / name), "--seed", seed]) == 0
    msg = tmp_path / "message.bin"
    msg.write_bytes(b"cli test message")
    ring = f"{tmp_path}/alice.pk,{tmp_path}/bob.pk"
    sig = tmp_path / "out.sig"
    rc = main(["sign", "--sk", str(tmp_path / "alice.sk"), "--ring", ring,
               "--message", str(msg), "--out", str(sig), "--seed", SEED2])
    assert rc == 0
    return tmp_path, ring, msg, sig


def test_keygen_deterministic_with_seed(tmp_path):
    for run in ("a", "b"):
        assert main(["keygen", "--out", str(tmp_path / run), "--seed", SEED0]) == 0
    assert (tmp_path / "a.pk").read_bytes() == (tmp_path / "b.pk").read_bytes()
    assert (tmp_path / "a.sk").read_bytes() == (tmp_path / "b.sk").read_bytes()


def test_keygen_without_seed_distinct(tmp_path):
    for run in ("a", "b"):
        assert main(["keygen", "--out", str(tmp_path / run)]) == 0
    assert (tmp_path / "a.pk").read_bytes() != (tmp_path / "b.pk").read_bytes()


def test_keygen_file_header(tmp_path):
    assert main(["keygen", "--out", str(tmp_path / "k"), "--seed", SEED0]) == 0
    sk = (tmp_path / "k.sk").read_bytes()
    assert sk[:4] == b"CHRS"
    assert sk[6] == 2  # object kind: private key


def test_keygen_bad_seed(tmp_path):
    assert main(["keygen", "--out", str(tmp_path / "k"), "--seed", "zz"]) == 2


def test_sign_verify_roundtrip(workspace, capsys):
    tmp_path, ring, msg, sig = workspace
    rc = main(["verify", "--sig", str(sig), "--ring", ring, "--message", str(msg)])
    assert rc == 0
    assert "accept" in capsys.readouterr().out


def test_verify_rejects_modified_message(workspace, capsys):
    tmp_path, ring, msg, sig = workspace
    msg.write_bytes(msg.read_bytes() + b"\x00")
    rc = main(["verify", "--sig", str(sig), "--ring", ring, "--message", str(msg)])
    assert rc == 1
    assert "challenge" in capsys.readouterr().out


def test_verify_truncated_signature(workspace):
    tmp_path, ring, msg, sig = workspace
    sig.write_bytes(sig.read_bytes()[:-5])
    assert main(["verify", "--sig", str(sig), "--ring", ring,
                 "--message", str(msg)]) == 2


def test_verify_missing_file(workspace):
    tmp_path, ring, msg, sig = workspace
    assert main(["verify", "--sig", str(tmp_path / "nope.sig"), "--ring", ring,
                 "--message", str(msg)]) == 3


def test_sign_signer_not_in_ring(workspace):
    tmp_path, ring, msg, sig = workspace
    assert main(["keygen", "--out", str(tmp_path / "carol"), "--seed", SEED2]) == 0
    rc = main(["sign", "--sk", str(tmp_path / "carol.sk"), "--ring", ring,
               "--message", str(msg), "--out", str(tmp_path / "x.sig")])
    assert rc == 2


def test_sign_oversized_ring(tmp_path, key_pool, single_params):
    # 65 public keys: one over the limit
    paths = []
    for i, (_, pk) in enumerate(key_pool):
        p = tmp_path / f"k{i}.pk"
        p.write_bytes(codec.encode_public_key(pk))
        paths.append(str(p))
    extra_sk, extra_pk = hots.keygen(b"\x99" * 32, single_params)
    p = tmp_path / "k64.pk"
    p.write_bytes(codec.encode_public_key(extra_pk))
    paths.append(str(p))
    (tmp_path / "m").write_bytes(b"m")
    (tmp_path / "extra.sk").write_bytes(codec.encode_private_key(extra_sk))
    rc = main(["sign", "--sk", str(tmp_path / "extra.sk"), "--ring", ",".join(paths),
               "--message", str(tmp_path / "m"), "--out", str(tmp_path / "x.sig")])
    assert rc == 2


def test_threshold_workflow(workspace, capsys):
    tmp_path, ring, msg, _ = workspace
    rc = main(["share", "--sk", str(tmp_path / "alice.sk"), "--threshold", "2",
               "--participants", "4", "--out-prefix", str(tmp_path / "alice"),
               "--seed", SEED2])
    assert rc == 0
    for x in (1, 3):
        rc = main(["partial-sign", "--share", f"{tmp_path}/alice.share{x:02d}",
                   "--ring", ring, "--message", str(msg),
                   "--out", f"{tmp_path}/p{x}.part"])
        assert rc == 0
    rc = main(["combine", "--partials", f"{tmp_path}/p1.part,{tmp_path}/p3.part",
               "--ring", ring, "--message", str(msg), "--threshold", "2",
               "--out", str(tmp_path / "t.sig")])
    assert rc == 0
    rc = main(["verify", "--sig", str(tmp_path / "t.sig"), "--ring", ring,
               "--message", str(msg)])
    assert rc == 0
    assert "accept" in capsys.readouterr().out


def test_combine_with_too_few_partials(workspace):
    tmp_path, ring, msg, _ = workspace
    assert main(["share", "--sk", str(tmp_path / "alice.sk"), "--threshold", "2",
                 "--participants", "4", "--out-prefix", str(tmp_path / "alice"),
                 "--seed", SEED2]) == 0
    assert main(["partial-sign", "--share", f"{tmp_path}/alice.share01",
                 "--ring", ring, "--message", str(msg),
                 "--out", f"{tmp_path}/p1.part"]) == 0
    rc = main(["combine", "--partials", f"{tmp_path}/p1.part", "--ring", ring,
               "--message", str(msg), "--threshold", "2",
               "--out", str(tmp_path / "t.sig")])
    assert rc == 2


def test_combine_with_corrupted_partial(workspace):
    tmp_path, ring, msg, _ = workspace
    assert main(["share", "--sk", str(tmp_path / "alice.sk"), "--threshold", "2",
                 "--participants", "4", "--out-prefix", str(tmp_path / "alice"),
                 "--seed", SEED2]) == 0
    for x in (1, 2):
        assert main(["partial-sign", "--share", f"{tmp_path}/alice.share{x:02d}",
                     "--ring", ring, "--message", str(msg),
                     "--out", f"{tmp_path}/p{x}.part"]) == 0
    blob = bytearray((tmp_path / "p2.part").read_bytes())
    blob[100] ^= 0x01  # inside sigma_share
    (tmp_path / "p2.part").write_bytes(bytes(blob))
    rc = main(["combine", "--partials", f"{tmp_path}/p1.part,{tmp_path}/p2.part",
               "--ring", ring, "--message", str(msg), "--threshold", "2",
               "--out", str(tmp_path / "t.sig")])
    assert rc == 4


def test_bench_minimal(tmp_path, capsys):
    out_csv = tmp_path / "bench.csv"
    rc = main(["bench", "--ring-sizes", "2,4", "--modes", "single",
               "--iterations", "10", "--csv", str(out_csv)])
    assert rc == 0
    text = capsys.readouterr().out
    assert "size fit" in text
    assert "parallelism: none" in text
    with open(out_csv) as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1 + 2  # header + one row per configuration
    assert rows[0][0] == "ring_size"
    assert all(row[3] == "ok" for row in rows[1:])


def test_bench_threshold_config(tmp_path, capsys):
    rc = main(["bench", "--ring-sizes", "2", "--modes", "threshold",
               "--threshold-configs", "2/4", "--iterations", "10"])
    assert rc == 0
    assert "threshold" in capsys.readouterr().out


def test_bench_iterations_floor():
    assert main(["bench", "--iterations", "5"]) == 2
