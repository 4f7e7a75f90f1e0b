import io
import re

import pytest

from conftest import fixture_path
from wdlkit.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


class TestCheck:
    def test_l1_passes(self):
        code, out, _ = call("check", fixture_path("l1.lat"))
        assert code == 0
        assert len(out.splitlines()) == 16 and "FAIL" not in out

    def test_n5_fails_with_witness(self):
        code, out, _ = call("check", fixture_path("n5_pp.lat"))
        assert code == 1
        assert "FAIL axiom-3 witness x=b y=a lhs=a rhs=b" in out.splitlines()

    def test_missing_file(self):
        code, _, err = call("check", "/nonexistent/file.lat")
        assert code == 2 and err.startswith("error:")

    def test_bad_format(self, tmp_path):
        p = tmp_path / "bad.lat"
        p.write_text("elements 0 1\nfrobnicate 0 1\n")
        code, _, err = call("check", p)
        assert code == 2 and "line 2" in err

    def test_not_a_lattice(self, tmp_path):
        p = tmp_path / "bad.lat"
        p.write_text("elements 0 x y\ncover 0 x\ncover 0 y\n")
        code, _, err = call("check", p)
        assert code == 2 and "x, y" in err


class TestCommands:
    def test_enumerate_count(self):
        assert call("enumerate", "--size", 6, "--count-only")[:2] == (0, "15\n")

    def test_enumerate_listing(self):
        code, out, _ = call("enumerate", "--size", 4)
        assert code == 0 and out.count("elements") == 2

    def test_enumerate_cap(self):
        assert call("enumerate", "--size", 9, "--count-only")[0] == 2

    def test_concepts_and_dot(self, tmp_path):
        dot = tmp_path / "c.dot"
        code, out, _ = call("concepts", fixture_path("neq3.cxt"), "--dot", dot)
        assert code == 0 and len(out.splitlines()) == 8
        text = dot.read_text()
        assert len(re.findall(r"^  c\d+ \[", text, re.M)) == 8
        assert len(re.findall(r"->", text)) == 12

    def test_algebra_tables(self):
        code, out, _ = call("algebra", fixture_path("neq2.cxt"), "--tables")
        assert code == 0
        assert out.splitlines()[0] == "0: up=3 down=3 extent={} intent={a,b}"
        assert "PASS axiom-3'" in out

    def test_derive_bounds(self):
        code, out, _ = call("derive-bounds", fixture_path("l1.lat"))
        assert code == 0 and out.startswith("bottom 0\ntop 1\n")
        code, out, _ = call("derive-bounds", fixture_path("n5_pp.lat"))
        assert code == 1 and "axiom-3" in out

    def test_standard_context(self, tmp_path):
        target = tmp_path / "n5.cxt"
        assert call("standard-context", fixture_path("n5.lat"), "-o", target)[0] == 0
        assert target.read_text() == fixture_path("n5_standard.cxt").read_text()

    def test_canonical(self):
        code, out, _ = call("canonical", fixture_path("b2.lat"), "--embed-report")
        assert code == 0
        assert out.startswith("B\n\n2\n2\n")
        assert "PASS chain" in out and "preserves up: yes" in out

    def test_canonical_rejects_non_wdl(self):
        code, out, _ = call("canonical", fixture_path("n5_pp.lat"))
        assert code == 1 and "FAIL axiom-3" in out

    def test_stone(self):
        code, out, _ = call("stone", fixture_path("b3.lat"))
        assert code == 0 and "field 8 sets, embedding onto" in out
        code, _, err = call("stone", fixture_path("chain4.lat"))
        assert code == 2 and "differ" in err

    def test_search(self, tmp_path):
        code, out, _ = call("search", "--property", "up-neq-down", "--max-size", 3)
        assert code == 0
        assert out.splitlines()[0].startswith("up-neq-down: size 3 lattice #0")
        code, _, _ = call("search", "--property", "no-such", "--max-size", 3)
        assert code == 2
        target = tmp_path / "hit.lat"
        call("search", "--property", "pp-pair-fails-axioms", "--max-size", 5, "-o", target)
        assert target.read_text().startswith("elements 0 a b c 1")

    def test_diagnostics(self):
        code, out, _ = call("diagnostics", fixture_path("l1.lat"))
        assert code == 0
        assert "boolean-part vs skeleton-intersection: strict-subset" in out
        assert "complemented vs skeleton-intersection: =" in out


class TestUsage:
    def test_no_command(self, capsys):
        assert call()[0] == 2

    def test_unknown_flag(self, capsys):
        assert call("check", "--wat")[0] == 2

    def test_help(self, capsys):
        assert call("--help")[0] == 0

    def test_threads_env(self, monkeypatch):
        monkeypatch.setenv("WDL_THREADS", "x")
        assert call("enumerate", "--size", 3, "--count-only")[0] == 2
        monkeypatch.setenv("WDL_THREADS", "2")
        assert call("enumerate", "--size", 3, "--count-only")[:2] == (0, "1\n")

    def test_deterministic(self):
        a = call("diagnostics", fixture_path("l2.lat"))
        b = call("diagnostics", fixture_path("l2.lat"))
        assert a == b
