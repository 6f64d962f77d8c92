#!/usr/bin/env python3
# Copyright 2026 The d2dsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled scenario files under scenarios/ and conformance/."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent


def imsi(n):
    return f"00101{n:010d}"


def subscriber(n, services=("app1",), d2d=True):
    s = {"imsi": imsi(n)}
    if d2d:
        s["d2d_id"] = f"d2d-{n}"
        s["services"] = list(services)
    return s


def ue(n, x, y=0, cell="enb1", **extra):
    u = {"id": f"ue{n}", "imsi": imsi(n), "cell": cell, "position": [x, y]}
    u.update(extra)
    return u


def act(at, n, do, **extra):
    a = {"at_s": at, "ue": f"ue{n}", "do": do}
    a.update(extra)
    return a


def pair_script(flow_packets=10, interval_ms=10, flow_at=4):
    return [
        act(0, 1, "power_on"),
        act(0, 2, "power_on"),
        act(1, 1, "start_discovery", app="app1"),
        act(1, 2, "start_discovery", app="app1"),
        act(3, 1, "initiate_session", peer="ue2"),
        act(3, 2, "initiate_session", peer="ue1"),
        act(flow_at, 1, "send_flow", peer="ue2", packets=flow_packets, interval_ms=interval_ms,
            size=64),
    ]


def base(duration, subscribers, ues, actions, **extra):
    doc = {
        "version": 1,
        "seed": 1,
        "duration_s": duration,
        "subscribers": subscribers,
        "cells": [{"id": "enb1", "position": [0, 0]}],
        "ues": ues,
        "actions": actions,
    }
    doc.update(extra)
    return doc


def nominal(**extra):
    return base(6, [subscriber(1), subscriber(2)], [ue(1, 0), ue(2, 50)], pair_script(), **extra)


def scenarios():
    out = {}
    out["nominal"] = nominal()
    out["offload_1000"] = base(7, [subscriber(1), subscriber(2)], [ue(1, 0), ue(2, 50)],
                               pair_script(flow_packets=1000, interval_ms=1))

    # ue2 walks away along +x at 10 m/s from t=3 and leaves D2D range mid-flow.
    out["handover"] = base(
        26, [subscriber(1), subscriber(2)],
        [ue(1, 0), ue(2, 50, waypoints=[[3, 50, 0], [23, 250, 0]])],
        pair_script(flow_packets=400, interval_ms=50))

    out["unauthorized"] = base(
        4, [subscriber(1), subscriber(2, services=("app2",)), subscriber(3, d2d=False)],
        [ue(1, 0), ue(2, 50), ue(3, 80)],
        [act(0, n, "power_on") for n in (1, 2, 3)] +
        [act(1, n, "start_discovery", app="app1") for n in (1, 2, 3)])

    sso = [act(0, 1, "power_on")]
    for k in range(5):
        sso += [act(1 + 2 * k, 1, "start_discovery", app="app1"),
                act(2 + 2 * k, 1, "stop_discovery")]
    out["sso_k5"] = base(12, [subscriber(1)], [ue(1, 0)], sso)
    out["sso_k5_per_request"] = base(12, [subscriber(1)], [ue(1, 0)], sso,
                                     timers={"authz_validity_s": 0})

    out["congestion"] = nominal(cells=[{"id": "enb1", "position": [0, 0], "capacity": 10,
                                        "preload": 9}])
    out["prose_discovery"] = nominal(options={"discovery": "prose_server"})
    out["separate_push"] = nominal(options={"authz_push": "separate"})

    # One scenario per injected fault. Each contains the behaviour the fault
    # corrupts; all of them must fail the invariant check.
    out["fault_ignore_temp_expiry"] = base(
        6, [subscriber(1), subscriber(2)], [ue(1, 0), ue(2, 50)],
        [act(0, 1, "power_on"), act(0, 2, "power_on"),
         act(1, 1, "start_discovery", app="app1"),
         act(4, 2, "start_discovery", app="app1")],
        timers={"temp_id_ttl_s": 2}, faults=["ignore_temp_expiry"])
    out["fault_double_grant_slot"] = base(
        3, [subscriber(1), subscriber(2)], [ue(1, 0), ue(2, 50)], pair_script()[:4],
        faults=["double_grant_slot"])
    out["fault_reuse_radio_bearer"] = nominal(faults=["reuse_radio_bearer"])
    out["fault_skip_l2_install"] = nominal(faults=["skip_l2_install"])
    out["fault_skip_authz_check"] = base(
        3, [subscriber(1), subscriber(2, services=("app2",))], [ue(1, 0), ue(2, 50)],
        pair_script()[:4], faults=["skip_authz_check"])
    out["fault_route_d2d_via_pgw"] = nominal(faults=["route_d2d_via_pgw"])
    out["fault_new_ip_for_d2d"] = nominal(faults=["new_ip_for_d2d"])

    out["determinism_100"] = crowd(100, 60)
    out["perf_1000"] = perf()
    return out


def crowd(n_ues, duration):
    """UEs in pairs, 20 m apart, pairs 300 m apart over four cells."""
    subs, ues, acts = [], [], []
    cells = [{"id": f"enb{c + 1}", "position": [c * 4000, 0]} for c in range(4)]
    for i in range(n_ues // 2):
        a, b = 2 * i + 1, 2 * i + 2
        cell = i % 4
        x = cell * 4000 + (i // 4) * 300 - 1800
        subs += [subscriber(a), subscriber(b)]
        ues += [ue(a, x, 0, cell=f"enb{cell + 1}"), ue(b, x + 20, 0, cell=f"enb{cell + 1}")]
        t0 = 1 + 0.1 * i
        acts += [act(0, a, "power_on"), act(0, b, "power_on"),
                 act(t0, a, "start_discovery", app="app1"),
                 act(t0, b, "start_discovery", app="app1"),
                 act(t0 + 2, a, "initiate_session", peer=f"ue{b}"),
                 act(t0 + 2, b, "initiate_session", peer=f"ue{a}"),
                 act(t0 + 4, a, "send_flow", peer=f"ue{b}", packets=200, interval_ms=100,
                     size=128)]
    return base(duration, subs, ues, acts, cells=cells, options={"action_jitter_ms": 50})


def perf():
    """1000 UEs and 500 D2D sessions in one large cell; discovery is staggered
    so that only a few dozen UEs listen to the air at any time."""
    subs, ues, acts = [], [], []
    for i in range(500):
        a, b = 2 * i + 1, 2 * i + 2
        subs += [subscriber(a), subscriber(b)]
        ues += [ue(a, 0, 0), ue(b, 10, 0)]
        t0 = round(1 + 0.02 * i, 3)
        acts += [act(0, a, "power_on"), act(0, b, "power_on"),
                 act(t0, a, "start_discovery", app="app1"),
                 act(t0, b, "start_discovery", app="app1"),
                 act(round(t0 + 0.5, 3), a, "initiate_session", peer=f"ue{b}"),
                 act(round(t0 + 0.5, 3), b, "initiate_session", peer=f"ue{a}"),
                 act(round(t0 + 1, 3), a, "send_flow", peer=f"ue{b}", packets=700,
                     interval_ms=10, size=64)]
    return base(20, subs, ues, acts,
                cells=[{"id": "enb1", "position": [0, 0], "capacity": 2000, "pool_slots": 1024}])


def conformance():
    one = [subscriber(1)]
    return {
        "attach_discovery": base(2, one, [ue(1, 0)],
                                 [act(0, 1, "power_on"),
                                  act(1, 1, "start_discovery", app="app1")]),
        "discovery_auth_recheck": base(3, one, [ue(1, 0)],
                                       [act(0, 1, "power_on"),
                                        act(2, 1, "start_discovery", app="app1")],
                                       timers={"authz_validity_s": 1}),
        "comm_establishment": base(4, [subscriber(1), subscriber(2)], [ue(1, 0), ue(2, 50)],
                                   pair_script()[:6]),
    }


def write(path, doc):
    # Large generated crowds are kept compact.
    indent = 1 if len(doc["ues"]) <= 10 else None
    path.write_text(json.dumps(doc, indent=indent) + "\n")


def main():
    for name, doc in scenarios().items():
        write(ROOT / "scenarios" / f"{name}.json", doc)
    for name, doc in conformance().items():
        write(ROOT / "conformance" / f"{name}.json", doc)


if __name__ == "__main__":
    main()
