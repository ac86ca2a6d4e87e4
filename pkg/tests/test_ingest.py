import json
import math

import numpy as np
import pytest

from angdil.dilatation import delta_p
from angdil.errors import OutOfDomainError, ParseError, RegularityError, StructureError
from angdil.geometry import disk_area_green
from angdil.ingest import (SampledMapping, parse_sampled_map, sample_mapping, sampled_jet,
                           write_sampled_map)
from angdil.mapping import AngularReparam, Identity, PolarPoint, RadialPower, validate_regular

PI = math.pi


def grid(n_r):
    return np.arange(1, n_r + 1) / n_r


def small_csv(tmp_path, rows, header="r,theta,re,im"):
    path = tmp_path / "m.csv"
    path.write_text(header + "\n" + "\n".join(rows) + "\n")
    return path


def identity_rows(radii=(0.5, 0.75, 1.0), n=16):
    out = []
    for r in radii:
        for j in range(n):
            t = 2 * PI * j / n
            out.append(f"{r!r},{t!r},{r * math.cos(t)!r},{r * math.sin(t)!r}")
    return out


# -- parsing -----------------------------------------------------------------

def test_parse_small_identity(tmp_path):
    sm = parse_sampled_map(small_csv(tmp_path, identity_rows()))
    assert sm.theta_count == 16 and list(sm.r_values) == [0.5, 0.75, 1.0]
    assert complex(sm.values(0.75, PI / 2)) == pytest.approx(0.75j, abs=1e-15)


def test_row_order_does_not_matter(tmp_path):
    rows = identity_rows()
    a = parse_sampled_map(small_csv(tmp_path, rows))
    rng = np.random.default_rng(7)
    b = parse_sampled_map(small_csv(tmp_path, [rows[k] for k in rng.permutation(len(rows))]))
    assert np.array_equal(a.samples, b.samples)


@pytest.mark.parametrize("header", ["r,theta,re", "x,theta,re,im", "r,theta,im,re", ""])
def test_bad_header(tmp_path, header):
    with pytest.raises(ParseError) as info:
        parse_sampled_map(small_csv(tmp_path, identity_rows(), header=header))
    assert info.value.line == 1


def test_bad_field_reports_line(tmp_path):
    rows = identity_rows()
    rows[4] = "0.5,1.0,abc,0"
    with pytest.raises(ParseError) as info:
        parse_sampled_map(small_csv(tmp_path, rows))
    assert info.value.line == 6
    rows[4] = "0.5,1.0"
    with pytest.raises(ParseError):
        parse_sampled_map(small_csv(tmp_path, rows))
    rows[4] = "0.5,1.0,nan,0"
    with pytest.raises(ParseError):
        parse_sampled_map(small_csv(tmp_path, rows))


def test_missing_row_is_structure_error(tmp_path):
    rows = identity_rows()
    del rows[20]
    with pytest.raises(StructureError):
        parse_sampled_map(small_csv(tmp_path, rows))


def test_duplicate_node(tmp_path):
    rows = identity_rows()
    rows[1] = rows[0]
    with pytest.raises(StructureError, match="duplicate"):
        parse_sampled_map(small_csv(tmp_path, rows))


def test_off_grid_angle(tmp_path):
    rows = identity_rows()
    r, t, re, im = rows[3].split(",")
    rows[3] = f"{r},{float(t) + 1e-9!r},{re},{im}"
    with pytest.raises(StructureError, match="not on the grid"):
        parse_sampled_map(small_csv(tmp_path, rows))


def test_too_few_angles_or_radii(tmp_path):
    with pytest.raises(StructureError):
        parse_sampled_map(small_csv(tmp_path, identity_rows(n=8)))
    with pytest.raises(StructureError):
        parse_sampled_map(small_csv(tmp_path, identity_rows(radii=(0.5, 1.0))))


def test_empty_file(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text("")
    with pytest.raises(ParseError):
        parse_sampled_map(path)
    path.write_text("r,theta,re,im\n")
    with pytest.raises(StructureError):
        parse_sampled_map(path)


def test_modulus_above_one_rejected(tmp_path):
    rows = identity_rows()
    rows[0] = f"0.5,0.0,1.5,0.0"
    with pytest.raises(OutOfDomainError):
        parse_sampled_map(small_csv(tmp_path, rows))


def test_json_variant(tmp_path):
    sm = sample_mapping(RadialPower(2), grid(8), 32)
    path = write_sampled_map(tmp_path / "m.json", sm)
    back = parse_sampled_map(path)
    assert np.array_equal(back.samples, sm.samples)
    assert back.asserted_flags["fixes_origin"]
    bad = json.loads(path.read_text())
    del bad["theta_count"]
    path.write_text(json.dumps(bad))
    with pytest.raises(ParseError):
        parse_sampled_map(path)
    path.write_text("{not json")
    with pytest.raises(ParseError):
        parse_sampled_map(path)


def test_csv_write_read_roundtrip_exact(tmp_path):
    sm = sample_mapping(AngularReparam((0.3,)), grid(6), 32)
    back = parse_sampled_map(write_sampled_map(tmp_path / "m.csv", sm))
    assert np.array_equal(back.samples, sm.samples)
    assert np.array_equal(back.r_values, sm.r_values)


# -- interpolation and jets --------------------------------------------------

def test_values_at_nodes_reproduce_samples():
    sm = sample_mapping(RadialPower(2), grid(16), 64)
    t = sm.theta_values
    assert np.max(np.abs(sm.values(sm.r_values[3], t) - sm.samples[3])) <= 1e-16


def test_theta_wraps_around():
    sm = sample_mapping(Identity(), grid(16), 64)
    assert complex(sm.values(0.5, 2 * PI - 1e-3)) == pytest.approx(complex(sm.values(0.5, -1e-3)), abs=1e-15)


def test_outside_hull_is_error():
    sm = sample_mapping(Identity(), [0.2, 0.5, 1.0], 32)
    with pytest.raises(OutOfDomainError):
        sm.values(0.1, 0.0)


@pytest.mark.parametrize("n_r,n_t,tol", [(64, 256, 1e-6), (128, 512, 1e-7)])
def test_node_jets_converge(n_r, n_t, tol):
    m = RadialPower(2)
    sm = sample_mapping(m, grid(n_r), n_t)
    pt = PolarPoint(0.5, 2 * PI * 17 / n_t)
    got = sampled_jet(sm, pt)
    _, d_r, d_t = m.jets(pt.r, pt.theta)
    assert abs(got.d_theta - complex(d_t)) <= tol
    assert abs(got.d_r - complex(d_r)) <= 1e-12  # second-order differences are exact on r^2


def test_roundtrip_delta_and_area_at_nodes():
    m = RadialPower(2)
    errs = []
    for n_r, n_t in ((64, 256), (128, 512)):
        sm = sample_mapping(m, grid(n_r), n_t)
        e = 0.0
        for r in (0.25, 0.5, 0.75):
            e = max(e, abs(delta_p(sm, 2, r).value / delta_p(m, 2, r).value - 1),
                    abs(disk_area_green(sm, r) / disk_area_green(m, r) - 1))
        errs.append(e)
    assert errs[0] <= 1e-3 and errs[1] <= 2.5e-4
    assert errs[0] / errs[1] >= 4


def test_constant_samples_violate_regularity():
    sm = SampledMapping(grid(8), 32, np.full((8, 32), 0.1 + 0j), {"regular": True})
    rep = validate_regular(sm, 8, 32, r_min=sm.r_values[0], r_max=1.0)
    assert not rep.passed
    with pytest.raises(RegularityError):
        delta_p(sm, 2, 0.5)


def test_folded_samples_locate_violation():
    sm = sample_mapping(AngularReparam((1.5,)), grid(16), 128)
    rep = validate_regular(sm, 16, 128, r_min=sm.r_values[0], r_max=1.0)
    assert not rep.passed
    assert abs(rep.min_location[1] - PI) < 0.1


def test_flags():
    sm = sample_mapping(Identity(), grid(4), 16, asserted_flags={"regular": True})
    assert sm.asserted_flags == {"regular": True, "n_property": False, "fixes_origin": False}
    assert not sm.fixes_origin
