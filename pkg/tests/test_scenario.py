import math

import pytest

from y00lab.scenario import Scenario, ScenarioError, parse_scenario

MINIMAL = """
# smallest PSK scenario
scheme = psk
m_bases = 4
mean_photon = 2.5
"""


def test_minimal_defaults():
    s = parse_scenario(MINIMAL)
    assert s.scheme == "psk" and s.m_bases == 4 and s.mean_photon == 2.5
    assert s.lfsr_length == 16 and s.lfsr_seed == 1
    assert s.channel_kappa == 1.0
    assert s.amplitudes == (3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0)
    assert s.lfsr().key_length_bits == 16


def test_full_parse():
    s = parse_scenario(
        MINIMAL
        + "osk = yes\nlfsr_taps = 0b11000\nlfsr_length = 4\nlfsr_seed = 0x9\nloss_db = 20  # comment\n"
        + "dither_angles = 0, 1.5\naxis_dither = on\n"
    )
    assert s.osk and s.lfsr().taps == 0b11000 and s.lfsr_seed == 9
    assert s.channel_kappa == pytest.approx(0.1)
    assert s.dither_angles == (0.0, 1.5)
    assert s.randomization().axis_dither_enabled


@pytest.mark.parametrize(
    "extra,line,fragment",
    [
        ("kappa = 1.5", 6, "kappa"),
        ("kappa = 0", 6, "kappa"),
        ("mean_photon = 3", 6, "duplicate"),
        ("colour = blue", 6, "unknown key"),
        ("m_bases = four", 6, None),
        ("lfsr_seed = 0", 6, "zero"),
        ("osk = maybe", 6, "boolean"),
        ("just some words", 6, "key = value"),
    ],
)
def test_errors_name_the_line(extra, line, fragment):
    text = MINIMAL + extra + "\n"
    if extra.startswith("m_bases"):
        text = MINIMAL.replace("m_bases = 4\n", "") + extra + "\n"
        line = 5
    with pytest.raises(ScenarioError) as exc:
        parse_scenario(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)
    if fragment:
        assert fragment in str(exc.value)


def test_scheme_specific_keys():
    with pytest.raises(ScenarioError):
        parse_scenario("scheme = imdd\nm_bases = 2\nmean_photon = 1\n")
    with pytest.raises(ScenarioError):
        parse_scenario("scheme = psk\nm_bases = 2\n")
    with pytest.raises(ScenarioError):
        parse_scenario(MINIMAL + "numbering_flip = true\n")
    s = parse_scenario("scheme = imdd\nm_bases = 2\nmax_amplitude = 5\n")
    assert s.constellation().amplitude == 5


def test_kappa_and_loss_exclusive():
    with pytest.raises(ScenarioError):
        parse_scenario(MINIMAL + "kappa = 0.5\nloss_db = 3\n")


def test_search_guard_at_parse_time():
    with pytest.raises(ScenarioError, match="refused"):
        parse_scenario(MINIMAL + "lfsr_length = 30\nattack = known_plaintext\n")
    s = parse_scenario(MINIMAL + "lfsr_length = 24\nattack = indirect\nexhaustive_search = false\n")
    assert not s.exhaustive_search


def test_keyless_attack_needs_no_polynomial():
    s = parse_scenario(MINIMAL + "lfsr_length = 128\nattack = lo_ko\nkappa = 0.0099009900990099\n")
    assert s.lfsr_length == 128


def test_items_cover_every_field():
    s = parse_scenario(MINIMAL)
    keys = [k for k, _ in s.items()]
    assert keys[:3] == ["scheme", "m_bases", "mean_photon"]
    assert len(keys) == len(Scenario.__dataclass_fields__)
    assert dict(s.items())["dither_angles"] == f"0.0,{math.pi!r}"
