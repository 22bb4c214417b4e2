#!/usr/bin/env python3
# Copyright 2026 The dataplace Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates configs/. The JSON files are committed; run this after edits."""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "configs"

PARAMS = {
    "e_act": 2.0, "e_idle": 0.2, "e_multi": 0.5, "e_inter": 0.3, "lat_avg": 1.0,
    "bus_width": 16.0, "f_accel": 200e6, "f_dma": 200e6, "dma_init": 20.0,
    "dma_cycles_per_byte": 0.25,
}
# plenty of bus and DMA: communication never bounds the run
AMPLE = dict(PARAMS, bus_width=1e9, dma_init=0.0, dma_cycles_per_byte=0.0)

GEMM = ["i", "j", "k"]
CONV = ["n", "k", "c", "oy", "ox", "r", "s"]
# channels innermost so partial sums stay in the PE
RS_ORDER = ["n", "k", "oy", "ox", "c", "r", "s"]


def level(name, parent, grid=(1, 1), virtual=False, cap=0, rd=0.0, wr=0.0, connect=(), **extra):
    d = {"name": name, "parent": parent, "grid": list(grid), "virtual": virtual,
         "capacity_bytes": cap, "read_energy": rd, "write_energy": wr, "connect": list(connect)}
    d.update(extra)
    return d


def conn(rel, *arrays):
    return {"relation": rel, "arrays": list(arrays)}


def arch(name, levels, params=PARAMS):
    leaf = levels[-1]["grid"]
    return {"name": name, "levels": levels, "params": dict(params, pe_size=leaf[0] * leaf[1])}


def three_level(name, grid, rf_cap, connect=(), params=PARAMS):
    return arch(name, [
        level("DRAM", None, rd=200.0, wr=200.0),
        level("GLB", "DRAM", cap=262144, rd=6.0, wr=6.0),
        level("RF", "GLB", grid=grid, cap=rf_cap, rd=1.0, wr=1.0, connect=connect),
    ], params)


def rs_arch(name, grid, rf_cap, rf_connect=(), spads=None):
    rf = level("RF", "NoC", grid=grid, cap=rf_cap, rd=1.0, wr=1.0, connect=rf_connect)
    if spads:
        rf["per_operand"] = spads
    return arch(name, [
        level("DRAM", None, rd=200.0, wr=200.0),
        level("GLB", "DRAM", cap=262144, rd=6.0, wr=6.0),
        level("NoC", "GLB", grid=grid, virtual=True, connect=[
            conn("{ [x, y] -> [x - 1, y + 1] }", "I"),
            conn("{ [x, y] -> [x - 1, y] }", "W"),
            conn("{ [x, y] -> [x, y - 1] }", "O")]),
        rf,
    ])


def lv(name, dims, T=None, S=None, order=None, x=None, y=None, simd=None):
    d = {"level": name}
    if order:
        d["temporal_order"] = order
    if T:
        d["temporal_tile"] = dict(zip(dims, T))
    if S:
        d["spatial_tile"] = dict(zip(dims, S))
    for key, v in (("space_x", x), ("space_y", y), ("simd", simd)):
        if v:
            d[key] = v
    return d


def mapping(name, levels):
    return {"name": name, "levels": levels}


OS_CONNECT = [conn("{ [x, y] -> [x + 1, y] }", "A"), conn("{ [x, y] -> [x, y + 1] }", "B")]
WS_CONNECT = [conn("{ [x, y] -> [x, y + 1] }", "C")]
KC_CONNECT = [conn("{ [x, y] -> [x, y + 1] }", "O")]
SD_CONNECT = [conn("{ [x, y] -> [x - 1, y] }", "I"), conn("{ [x, y] -> [x, y - 1] }", "I")]
EYERISS_SPADS = {
    "I": {"name": "ifmap_spad", "capacity_bytes": 512, "read_energy": 1.0, "write_energy": 1.0},
    "W": {"name": "filter_spad", "capacity_bytes": 1024, "read_energy": 1.0, "write_energy": 1.0},
    "O": {"name": "psum_spad", "capacity_bytes": 512, "read_energy": 1.0, "write_energy": 1.0},
}

ARCHS = {
    # full-size designs
    "os_8x8": three_level("os-8x8", (8, 8), 2048, OS_CONNECT),
    "os_8x8_ample": three_level("os-8x8-ample", (8, 8), 2048, OS_CONNECT, AMPLE),
    "ws_kj_8x8": three_level("ws-kj-8x8", (8, 8), 2048, WS_CONNECT),
    "vector_64": three_level("vector-64", (64, 1), 2048),
    "eyeriss": rs_arch("eyeriss-like", (14, 12), 2048, spads=EYERISS_SPADS),
    "ws_kc_8x8": three_level("ws-kc-8x8", (8, 8), 2048, KC_CONNECT),
    "shidiannao_8x8": three_level("shidiannao-8x8", (8, 8), 8192, SD_CONNECT),
    # small designs for the trace cross-check
    "os_4x4": three_level("os-4x4", (4, 4), 512, OS_CONNECT),
    "os_2x2": three_level("os-2x2", (2, 2), 512, OS_CONNECT),
    "ws_kj_4x4": three_level("ws-kj-4x4", (4, 4), 512, WS_CONNECT),
    "ws_kj_2x2": three_level("ws-kj-2x2", (2, 2), 512, WS_CONNECT),
    "vector_16": three_level("vector-16", (16, 1), 512),
    "vector_4": three_level("vector-4", (4, 1), 512),
    "rs_4x4": rs_arch("rs-4x4", (4, 4), 512, [conn("{ [x, y] -> [x - 1, y] }", "I")]),
    "shidiannao_4x4": three_level("shidiannao-4x4", (4, 4), 512, SD_CONNECT),
    "shidiannao_2x2": three_level("shidiannao-2x2", (2, 2), 512, SD_CONNECT),
}

MAPPINGS = {
    "os_gemm256": mapping("os-ij", [
        lv("DRAM", GEMM),
        lv("GLB", GEMM, T=(64, 64, 256)),
        lv("RF", GEMM, T=(64, 64, 32), S=(8, 8, 32), y="i", x="j")]),
    "ws_gemm256": mapping("ws-kj", [
        lv("DRAM", GEMM),
        lv("GLB", GEMM, T=(256, 64, 64)),
        lv("RF", GEMM, T=(32, 64, 64), S=(32, 8, 8), order=["j", "k", "i"], y="k", x="j")]),
    "vector_gemm256": mapping("vector-j", [
        lv("DRAM", GEMM),
        lv("GLB", GEMM, T=(64, 256, 64)),
        lv("RF", GEMM, T=(16, 256, 16), S=(16, 4, 16), simd="j")]),
    "rs_alexnet": mapping("row-stationary", [
        lv("DRAM", CONV),
        lv("GLB", CONV, T=(1, 32, 48, 27, 27, 5, 5)),
        lv("NoC", CONV, T=(1, 32, 48, 9, 27, 5, 5), S=(1, 32, 48, 1, 27, 5, 1), x="oy", y="s"),
        lv("RF", CONV, T=(1, 16, 4, 1, 9, 5, 1), order=RS_ORDER)]),
    "rs_alexnet_quarter": mapping("row-stationary", [
        lv("DRAM", CONV),
        lv("GLB", CONV, T=(1, 16, 12, 27, 27, 5, 5)),
        lv("NoC", CONV, T=(1, 16, 12, 9, 27, 5, 5), S=(1, 16, 12, 1, 27, 5, 1), x="oy", y="s"),
        lv("RF", CONV, T=(1, 16, 4, 1, 9, 5, 1), order=RS_ORDER)]),
    "ws_kc_mobilenet": mapping("ws-kc", [
        lv("DRAM", CONV),
        lv("GLB", CONV, T=(1, 16, 32, 8, 56, 1, 1)),
        lv("RF", CONV, T=(1, 16, 32, 4, 28, 1, 1), S=(1, 2, 4, 4, 28, 1, 1), x="k", y="c")]),
    "shidiannao_resnet": mapping("shidiannao-oxoy", [
        lv("DRAM", CONV),
        lv("GLB", CONV, T=(1, 16, 3, 16, 112, 7, 7)),
        lv("RF", CONV, T=(1, 16, 3, 16, 112, 7, 7), S=(1, 16, 3, 2, 14, 7, 7), y="oy", x="ox")]),
    # gemm(8,8,8)
    "os_gemm8_4x4": mapping("os-ij", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(4, 4, 4), S=(1, 1, 4), y="i", x="j")]),
    "os_gemm8_2x2": mapping("os-ij", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(2, 2, 4), S=(1, 1, 4), y="i", x="j")]),
    "ws_gemm8_4x4": mapping("ws-kj", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(4, 4, 4), S=(4, 1, 1), order=["j", "k", "i"], y="k", x="j")]),
    "ws_gemm8_2x2": mapping("ws-kj", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(4, 2, 2), S=(4, 1, 1), order=["j", "k", "i"], y="k", x="j")]),
    "vector_gemm8_16": mapping("vector-j", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(2, 8, 2), S=(2, 1, 2), simd="j")]),
    "vector_gemm8_4": mapping("vector-j", [
        lv("DRAM", GEMM), lv("GLB", GEMM, T=(8, 8, 8)),
        lv("RF", GEMM, T=(2, 4, 2), S=(2, 1, 2), simd="j")]),
    # conv-small: 1x1x1x4x4x3x3
    "rs_conv_small": mapping("row-stationary", [
        lv("DRAM", CONV), lv("GLB", CONV, T=(1, 1, 1, 4, 4, 3, 3)),
        lv("NoC", CONV, T=(1, 1, 1, 4, 4, 3, 3), S=(1, 1, 1, 1, 4, 3, 1), x="oy", y="s"),
        lv("RF", CONV, T=(1, 1, 1, 1, 4, 1, 1))]),
    "sd_conv_small_4x4": mapping("shidiannao-oxoy", [
        lv("DRAM", CONV), lv("GLB", CONV, T=(1, 1, 1, 4, 4, 3, 3)),
        lv("RF", CONV, T=(1, 1, 1, 4, 4, 1, 1), S=(1, 1, 1, 1, 1, 1, 1), y="oy", x="ox")]),
    "sd_conv_small_2x2": mapping("shidiannao-oxoy", [
        lv("DRAM", CONV), lv("GLB", CONV, T=(1, 1, 1, 4, 4, 3, 3)),
        lv("RF", CONV, T=(1, 1, 1, 2, 2, 1, 1), S=(1, 1, 1, 1, 1, 1, 1), y="oy", x="ox")]),
}


def gemm_doc(name, i, j, k):
    return {"name": name, "op": "gemm", "dims": {"i": i, "j": j, "k": k}, "element_bits": 16}


def conv_doc(name, n, k, c, oy, ox, r, s, stride):
    dims = dict(zip(CONV + ["stride"], (n, k, c, oy, ox, r, s, stride)))
    return {"name": name, "op": "conv2d", "dims": dims, "element_bits": 16}


WORKLOADS = {
    "gemm-256": gemm_doc("gemm-256", 256, 256, 256),
    "gemm-8": gemm_doc("gemm-8", 8, 8, 8),
    "alexnet-conv2": conv_doc("alexnet-conv2", 1, 256, 48, 27, 27, 5, 5, 1),
    "alexnet-conv2-quarter": conv_doc("alexnet-conv2-quarter", 1, 64, 12, 27, 27, 5, 5, 1),
    "mobilenetv2-2": conv_doc("mobilenetv2-2", 1, 16, 32, 112, 112, 1, 1, 1),
    "resnet50-1": conv_doc("resnet50-1", 1, 64, 3, 112, 112, 7, 7, 2),
    "conv-small": conv_doc("conv-small", 1, 1, 1, 4, 4, 3, 3, 1),
}


def write(kind, name, doc):
    path = ROOT / kind / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")


def main():
    for kind in ("arch", "mapping", "workload"):
        (ROOT / kind).mkdir(parents=True, exist_ok=True)
    for name, doc in ARCHS.items():
        write("arch", name, doc)
    for name, doc in MAPPINGS.items():
        write("mapping", name, doc)
    for name, doc in WORKLOADS.items():
        write("workload", name, doc)


if __name__ == "__main__":
    main()
