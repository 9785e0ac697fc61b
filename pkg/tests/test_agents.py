import json

import pytest

from config import EXIT_ERROR, EXIT_MISMATCH, EXIT_OK
from src.agents.render_agent import PrettyConfig, RenderAgent, RenderConfig
from src.agents.scenario_agent import Scenario, ScenarioAgent, default_scenarios
from src.core.surgery import w4n
from src.utils import payloads, types


def _scenario(name, expected, compute, criterion=1):
    return Scenario(name=name, criterion=criterion, provenance="TEST", expected=expected, compute=compute)


def _boom():
    raise ValueError("no such surface")


@pytest.fixture(scope="module")
def default_report():
    return ScenarioAgent().verify()


def test_default_suite_passes(default_report):
    failing = [s["name"] for s in default_report["scenarios"] if s["status"] != "pass"]
    assert failing == []
    assert default_report["passed"]
    assert default_report["exit_code"] == EXIT_OK


def test_default_suite_keeps_declaration_order(default_report):
    assert [s["name"] for s in default_report["scenarios"]] == [s.name for s in default_scenarios()]
    assert {s["criterion"] for s in default_report["scenarios"]} == set(range(1, 8))


def test_override_turns_pass_into_mismatch():
    agent = ScenarioAgent(
        scenarios=[_scenario("w4n_8", {"chi": 40}, lambda: {"chi": w4n(8).chi})],
        overrides={"w4n_8": {"chi": 41}},
    )
    report = agent.verify()
    assert report["exit_code"] == EXIT_MISMATCH
    assert report["scenarios"][0]["expected"] == {"chi": 41}
    assert report["scenarios"][0]["computed"] == {"chi": 40}


def test_unknown_override_is_rejected():
    with pytest.raises(ValueError):
        ScenarioAgent(scenarios=[], overrides={"missing": {}})


def test_error_beats_mismatch():
    agent = ScenarioAgent(
        scenarios=[
            _scenario("wrong", {"x": 1}, lambda: {"x": 2}),
            _scenario("broken", {"x": 1}, _boom),
        ]
    )
    results = agent.run()
    assert [r.status for r in results] == ["fail", "error"]
    assert results[1].error == "ValueError: no such surface"
    assert ScenarioAgent.exit_code(results) == EXIT_ERROR


def test_changed_constant_is_detected(monkeypatch):
    monkeypatch.setattr("src.core.surgery.E4_CHI", 50)
    names = {"w4n_table", "normal_sum_equals_blowdown"}
    agent = ScenarioAgent(scenarios=[s for s in default_scenarios() if s.name in names], workers=1)
    report = agent.verify()
    assert report["exit_code"] == EXIT_MISMATCH
    assert all(s["status"] == "fail" for s in report["scenarios"])


def test_render_json():
    payload = payloads.w4n_payload(8, w4n(8))
    text = RenderAgent().render(payload, types.W4nPayload)
    data = json.loads(text)
    assert (data["chi"], data["sigma"], data["c1sq"], data["chi_h"]) == (40, -24, 8, 4)
    assert data["noether_holds"] is True


def test_render_rejects_payload_with_extra_keys():
    payload = {**payloads.w4n_payload(8, w4n(8)), "extra": 1}
    with pytest.raises(ValueError):
        RenderAgent().render(payload, types.W4nPayload)


def test_render_rejects_float_values():
    payload = {**payloads.hj_expand_payload(9, 2)}
    payload["value"] = 4.5
    with pytest.raises(ValueError):
        RenderAgent().render(payload, types.HJExpandPayload)


def test_pretty_tree_without_color():
    agent = RenderAgent(RenderConfig(pretty=True, text=PrettyConfig(color=False)))
    text = agent.render(payloads.hj_expand_payload(9, 2), types.HJExpandPayload)
    assert "string: [5, 2]" in text
    assert "value: 9/2" in text
    assert "lens:" in text
    assert "\033[" not in text


def test_pretty_scenarios():
    agent = ScenarioAgent(scenarios=[_scenario("ok", {"x": 1}, lambda: {"x": 1}), _scenario("bad", {"x": 1}, lambda: {"x": 3})])
    renderer = RenderAgent(RenderConfig(pretty=True, text=PrettyConfig(color=False)))
    text = renderer.render(agent.verify(), types.VerifyPayload)
    assert "[PASS] criterion 1: ok" in text
    assert "[FAIL] criterion 1: bad" in text
    assert "x: expected 1, computed 3" in text
    assert text.splitlines()[-1] == "1/2 scenarios passed, exit code 1"


def test_no_color_environment(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert not PrettyConfig().color
    monkeypatch.delenv("NO_COLOR")
    assert PrettyConfig().color


def test_json_keys_are_sorted():
    text = RenderAgent().render(payloads.w4n_payload(8, w4n(8)), types.W4nPayload)
    keys = list(json.loads(text))
    assert keys == sorted(keys)
