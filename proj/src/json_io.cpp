#include "isogroup/json_io.hpp"

#include <fstream>
#include <set>

namespace isogroup {

namespace {

void require_keys(const Json& j, const char* what,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional = {}) {
  if (!j.is_object()) {
    fail(errc::parse_error, std::string(what) + " must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!required.count(key) && !optional.count(key)) {
      fail(errc::parse_error,
           std::string(what) + " has unexpected key \"" + key + "\"");
    }
  }
  for (const auto& key : required) {
    if (!j.contains(key)) {
      fail(errc::parse_error,
           std::string(what) + " is missing key \"" + key + "\"");
    }
  }
}

long long get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    fail(errc::parse_error, std::string(what) + " must be an integer");
  }
  return j.get<long long>();
}

std::string get_string(const Json& j, const char* what) {
  if (!j.is_string()) {
    fail(errc::parse_error, std::string(what) + " must be a string");
  }
  return j.get<std::string>();
}

const Json& get_array(const Json& j, const char* what) {
  if (!j.is_array()) {
    fail(errc::parse_error, std::string(what) + " must be an array");
  }
  return j;
}

Rational get_fraction(const Json& j, const char* what) {
  return Rational::parse(get_string(j, what));
}

std::vector<int> get_int_vector(const Json& j, const char* what) {
  std::vector<int> out;
  for (const Json& e : get_array(j, what)) {
    out.push_back(static_cast<int>(get_int(e, what)));
  }
  return out;
}

Json cover_to_json(const std::vector<Neighborhood>& cover) {
  Json arr = Json::array();
  for (const Neighborhood& nb : cover) {
    Json o;
    o["epsilon"] = nb.epsilon.str();
    o["index"] = nb.index;
    o["targets"] = nb.targets;
    o["witnesses"] = nb.witnesses;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::vector<Neighborhood> cover_from_json(const Json& j) {
  std::vector<Neighborhood> cover;
  for (const Json& e : get_array(j, "cover")) {
    require_keys(e, "cover entry", {"epsilon", "index", "targets", "witnesses"});
    Neighborhood nb;
    nb.epsilon = get_fraction(e.at("epsilon"), "epsilon");
    nb.index = static_cast<int>(get_int(e.at("index"), "index"));
    nb.targets = get_int_vector(e.at("targets"), "targets");
    nb.witnesses = get_int_vector(e.at("witnesses"), "witnesses");
    if (nb.index != static_cast<int>(cover.size()) + 1) {
      fail(errc::parse_error, "cover entries must be indexed 1..N in order");
    }
    if (nb.witnesses.size() < 2 ||
        nb.witnesses.size() != nb.targets.size()) {
      fail(errc::parse_error,
           "cover entry needs matching witness/target tuples of size >= 2");
    }
    if (!(nb.epsilon > Rational(0))) {
      fail(errc::parse_error, "cover entry epsilon must be positive");
    }
    cover.push_back(std::move(nb));
  }
  return cover;
}

const char* kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::base:
      return "base";
    case PointKind::orbit:
      return "orbit";
    case PointKind::tag:
      return "tag";
    case PointKind::apex:
      return "apex";
  }
  return "base";
}

Json point_to_json(const PointProvenance& p) {
  Json o;
  o["kind"] = kind_name(p.kind);
  switch (p.kind) {
    case PointKind::base:
      o["group_element"] = p.group_element;
      break;
    case PointKind::orbit:
      o["neighborhood"] = p.neighborhood;
      if (p.group_element >= 0) o["group_element"] = p.group_element;
      break;
    case PointKind::tag:
      o["neighborhood"] = p.neighborhood;
      break;
    case PointKind::apex:
      break;
  }
  return o;
}

PointProvenance point_from_json(const Json& e, bool with_label,
                                std::string* label) {
  std::set<std::string> required{"kind"};
  if (with_label) required.insert("label");
  require_keys(e, "point record", required, {"group_element", "neighborhood"});
  if (with_label) *label = get_string(e.at("label"), "label");
  const std::string kind = get_string(e.at("kind"), "kind");
  PointProvenance p;
  auto want = [&](const char* key, bool allowed, bool needed) {
    if (e.contains(key) && !allowed) {
      fail(errc::parse_error, "point record of kind " + kind +
                                  " must not carry \"" + key + "\"");
    }
    if (!e.contains(key) && needed) {
      fail(errc::parse_error,
           "point record of kind " + kind + " requires \"" + key + "\"");
    }
  };
  if (kind == "base") {
    want("group_element", true, true);
    want("neighborhood", false, false);
    p.kind = PointKind::base;
    p.group_element = static_cast<int>(get_int(e.at("group_element"), "group_element"));
  } else if (kind == "orbit") {
    want("neighborhood", true, true);
    p.kind = PointKind::orbit;
    p.neighborhood = static_cast<int>(get_int(e.at("neighborhood"), "neighborhood"));
    want("group_element", true, p.neighborhood >= 1);
    if (e.contains("group_element")) {
      p.group_element = static_cast<int>(get_int(e.at("group_element"), "group_element"));
    }
  } else if (kind == "tag") {
    want("group_element", false, false);
    want("neighborhood", true, true);
    p.kind = PointKind::tag;
    p.neighborhood = static_cast<int>(get_int(e.at("neighborhood"), "neighborhood"));
  } else if (kind == "apex") {
    want("group_element", false, false);
    want("neighborhood", false, false);
    p.kind = PointKind::apex;
  } else {
    fail(errc::parse_error, "unknown point kind \"" + kind + "\"");
  }
  if (p.kind != PointKind::apex && p.group_element < -1) {
    fail(errc::parse_error, "point group_element out of range");
  }
  if (p.neighborhood < -1) {
    fail(errc::parse_error, "point neighborhood out of range");
  }
  return p;
}

const char* pipeline_name(Pipeline p) {
  return p == Pipeline::compact ? "compact" : "polish";
}

const char* schedule_name(OffsetSchedule s) {
  return s == OffsetSchedule::harmonic ? "harmonic" : "dyadic";
}

Pipeline pipeline_from_name(const std::string& s) {
  if (s == "compact") return Pipeline::compact;
  if (s == "polish") return Pipeline::polish;
  fail(errc::parse_error, "unknown pipeline \"" + s + "\"");
}

OffsetSchedule schedule_from_name(const std::string& s) {
  if (s == "harmonic") return OffsetSchedule::harmonic;
  if (s == "dyadic") return OffsetSchedule::dyadic;
  fail(errc::parse_error, "unknown offset schedule \"" + s + "\"");
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(errc::parse_error, "cannot open file: " + path);
  }
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    fail(errc::parse_error, "malformed JSON in file: " + path);
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(errc::invalid_argument, "cannot write file: " + path);
  }
  out << j.dump(2) << "\n";
}

Json space_to_json(const FiniteMetricSpace& space) {
  Json o;
  o["labels"] = space.labels();
  Json rows = Json::array();
  for (int i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < space.size(); ++j) {
      row.push_back(space.dist(i, j).str());
    }
    rows.push_back(std::move(row));
  }
  o["d"] = std::move(rows);
  return o;
}

SpacePtr space_from_json(const Json& j) {
  require_keys(j, "metric space", {"labels", "d"});
  std::vector<std::string> labels;
  for (const Json& e : get_array(j.at("labels"), "labels")) {
    labels.push_back(get_string(e, "label"));
  }
  std::vector<std::vector<Rational>> d;
  for (const Json& row : get_array(j.at("d"), "d")) {
    std::vector<Rational> r;
    for (const Json& e : get_array(row, "d row")) {
      r.push_back(get_fraction(e, "distance"));
    }
    d.push_back(std::move(r));
  }
  return validate_space(labels, d);
}

Group group_from_json(const Json& j) {
  if (!j.is_object()) {
    fail(errc::parse_error, "group must be a JSON object");
  }
  GroupSpec spec;
  if (j.contains("cayley")) {
    require_keys(j, "group", {"cayley"});
    std::vector<std::vector<int>> table;
    for (const Json& row : get_array(j.at("cayley"), "cayley")) {
      table.push_back(get_int_vector(row, "cayley row"));
    }
    spec.cayley = std::move(table);
  } else {
    require_keys(j, "group", {"generators", "degree"}, {"order_cap"});
    std::vector<std::vector<int>> gens;
    for (const Json& row : get_array(j.at("generators"), "generators")) {
      gens.push_back(get_int_vector(row, "generator"));
    }
    spec.generators = std::move(gens);
    spec.degree = static_cast<int>(get_int(j.at("degree"), "degree"));
    if (j.contains("order_cap")) {
      spec.order_cap = static_cast<int>(get_int(j.at("order_cap"), "order_cap"));
    }
  }
  return group_from_spec(spec);
}

Json iso_to_json(const IsoGroup& iso) {
  Json o;
  o["n"] = iso.space ? iso.space->size() : 0;
  o["elements"] = iso.elements;
  return o;
}

Json provenance_to_json(const Assembly& assembly) {
  Json o;
  o["pipeline"] = pipeline_name(assembly.pipeline);
  o["schedule"] = schedule_name(assembly.schedule);
  o["group_order"] = assembly.orbit_point.empty()
                         ? assembly.x_set.size()
                         : static_cast<int>(assembly.orbit_point[0].size());
  Json offsets = Json::array();
  for (const Rational& r : assembly.offsets) offsets.push_back(r.str());
  o["offsets"] = std::move(offsets);
  o["cover"] = cover_to_json(assembly.cover);
  Json points = Json::array();
  for (std::size_t p = 0; p < assembly.provenance.size(); ++p) {
    Json rec = point_to_json(assembly.provenance[p]);
    rec["label"] = assembly.K->label(static_cast<int>(p));
    points.push_back(std::move(rec));
  }
  o["points"] = std::move(points);
  return o;
}

ParsedProvenance provenance_from_json(const Json& j) {
  require_keys(j, "provenance",
               {"cover", "group_order", "offsets", "pipeline", "points",
                "schedule"});
  ParsedProvenance p;
  p.pipeline = pipeline_from_name(get_string(j.at("pipeline"), "pipeline"));
  p.schedule = schedule_from_name(get_string(j.at("schedule"), "schedule"));
  p.group_order = static_cast<int>(get_int(j.at("group_order"), "group_order"));
  if (p.group_order <= 0) {
    fail(errc::parse_error, "group_order must be positive");
  }
  for (const Json& e : get_array(j.at("offsets"), "offsets")) {
    p.offsets.push_back(get_fraction(e, "offset"));
  }
  p.cover = cover_from_json(j.at("cover"));
  if (p.offsets.size() != p.cover.size()) {
    fail(errc::parse_error, "offsets and cover must have matching lengths");
  }
  for (const Json& e : get_array(j.at("points"), "points")) {
    std::string label;
    p.points.push_back(point_from_json(e, true, &label));
    p.labels.push_back(std::move(label));
  }
  if (p.points.empty()) {
    fail(errc::parse_error, "provenance lists no points");
  }
  return p;
}

Json report_to_json(const RealizationReport& report) {
  Json o;
  o["group_order"] = report.group_order;
  o["pipeline"] = pipeline_name(report.pipeline);
  o["schedule"] = schedule_name(report.schedule);
  o["cover_size"] = report.cover_size;
  o["iso_order_of_k"] = report.iso_order_of_k;
  o["embedding_verified"] = report.embedding_verified;
  o["lemma1_verified"] = report.lemma1_verified;
  o["recovery_verified"] = report.recovery_verified;
  o["realized"] = report.realized;
  o["detail"] = report.detail;
  o["cover"] = cover_to_json(report.cover);
  Json points = Json::array();
  for (const PointProvenance& pp : report.provenance) {
    points.push_back(point_to_json(pp));
  }
  o["point_provenance"] = std::move(points);
  return o;
}

}  // namespace isogroup
