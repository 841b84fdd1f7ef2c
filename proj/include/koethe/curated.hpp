#pragma once
// Built-in verification suite: the curated instance set shipped with the
// tool, embedded so `koethe-lab suite` needs no external files. The bytes
// below are kept identical to instances/curated_suite.json; a unit test
// enforces the equality.

#include <string_view>

namespace koethe {

inline constexpr std::string_view curated_suite_json = R"KJSON({
  "schema": "koethe-lab/instance/v1",
  "name": "curated_suite",
  "spaces": {
    "InLog":   {"class": "InfiniteType", "alpha": {"form": "Log"}},
    "InLin1":  {"class": "InfiniteType", "alpha": {"form": "Linear", "c": 1.0}},
    "InLin2":  {"class": "InfiniteType", "alpha": {"form": "Linear", "c": 2.0}},
    "InNLog":  {"class": "InfiniteType", "alpha": {"form": "PowerLog", "c": 1.0, "p": 1.0, "q": 1.0}},
    "InLogSq": {"class": "InfiniteType", "alpha": {"form": "PowerLog", "c": 1.0, "p": 0.0, "q": 2.0}},
    "FinLin1": {"class": "FiniteType", "alpha": {"form": "Linear", "c": 1.0}},
    "FinNLog": {"class": "FiniteType", "alpha": {"form": "PowerLog", "c": 1.0, "p": 1.0, "q": 1.0}},
    "FinNSq":  {"class": "FiniteType", "alpha": {"form": "PowerLog", "c": 1.0, "p": 2.0, "q": 0.0}}
  },
  "sequences": {
    "ones":    {"form": "PowerLaw", "c": 1.0, "p": 0.0, "q": 0.0},
    "e1":      {"form": "FiniteTable", "values": [1.0]},
    "pair21":  {"form": "FiniteTable", "values": [2.0, 1.0]},
    "shifted": {"form": "FiniteTable", "values": [0.0, 1.0]},
    "finTbl":  {"form": "FiniteTable", "values": [1.0, 2.0, 3.0]},
    "geoHalf": {"form": "Geometric", "r": 0.5},
    "geo2":    {"form": "Geometric", "r": 2.0},
    "cube":    {"form": "PowerLaw", "c": 1.0, "p": 3.0, "q": 0.0},
    "nsq":     {"form": "PowerLaw", "c": 1.0, "p": 2.0, "q": 0.0},
    "nlogn":   {"form": "PowerLaw", "c": 2.0, "p": 1.0, "q": 1.0},
    "logCube": {"form": "PowerLaw", "c": 1.0, "p": 0.0, "q": 3.0},
    "expN":    {"form": "ExpOfExponent", "s": 1.0, "alpha": {"form": "Linear", "c": 1.0}},
    "expNsq":  {"form": "ExpOfExponent", "s": 1.0, "alpha": {"form": "PowerLog", "c": 1.0, "p": 2.0, "q": 0.0}}
  },
  "tasks": [
    {"id": "F01", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "ones"},
    {"id": "F02", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "e1"},
    {"id": "F03", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "geoHalf"},
    {"id": "F04", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "cube"},
    {"id": "F05", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "expNsq"},
    {"id": "F06", "op": "theorem1", "A": "InLog",   "B": "FinLin1", "theta": "geo2"},
    {"id": "F07", "op": "theorem1", "A": "FinNSq",  "B": "FinLin1", "theta": "finTbl"},
    {"id": "F08", "op": "theorem1", "A": "InLin1",  "B": "FinLin1", "theta": "ones"},
    {"id": "F09", "op": "theorem1", "A": "InNLog",  "B": "FinLin1", "theta": "geoHalf"},
    {"id": "F10", "op": "theorem1", "A": "InLog",   "B": "FinNLog", "theta": "ones"},
    {"id": "F11", "op": "theorem1", "A": "InLogSq", "B": "FinLin1", "theta": "nlogn"},
    {"id": "F12", "op": "theorem1", "A": "FinNLog", "B": "FinLin1", "theta": "nsq"},
    {"id": "T01", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "ones"},
    {"id": "T02", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "cube"},
    {"id": "T03", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "pair21"},
    {"id": "T04", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "expNsq"},
    {"id": "T05", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "geo2"},
    {"id": "T06", "op": "theorem2", "A": "InLin1",  "B": "FinLin1", "theta": "geo2"},
    {"id": "T07", "op": "theorem2", "A": "InLin1",  "B": "FinLin1", "theta": "expNsq"},
    {"id": "T08", "op": "theorem2", "A": "InLog",   "B": "InLin1",  "theta": "ones"},
    {"id": "T09", "op": "theorem2", "A": "InLog",   "B": "FinNLog", "theta": "geoHalf"},
    {"id": "T10", "op": "theorem2", "A": "InLogSq", "B": "FinLin1", "theta": "logCube"},
    {"id": "T11", "op": "theorem2", "A": "InLin2",  "B": "FinLin1", "theta": "expN"},
    {"id": "T12", "op": "theorem2", "A": "InLog",   "B": "FinLin1", "theta": "shifted"}
  ]
}
)KJSON";

// The raw literal above opens immediately before the first byte of the file
// and closes immediately after its final newline.
inline constexpr std::string_view curated_suite_name = "curated_suite";

} // namespace koethe
