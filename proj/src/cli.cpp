#include "isogroup/cli.hpp"

#include <cstdlib>
#include <map>
#include <ostream>
#include <set>

#include "isogroup/json_io.hpp"
#include "isogroup/realize.hpp"

namespace isogroup {

namespace {

/// Errors raised while reading user-supplied files and flags.
int input_exit(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << "\n";
  return e.code() == errc::size_guard_exceeded ? 3 : 2;
}

/// Errors raised after inputs parsed, i.e. the construction or the
/// stored artifacts are wrong.
int semantic_exit(std::ostream& err, const Error& e) {
  err << "verification error: " << e.what() << "\n";
  return e.code() == errc::size_guard_exceeded ? 3 : 1;
}

MetricChoice parse_metric(const std::string& text) {
  MetricChoice m;
  if (text == "discrete") {
    m.kind = MetricKind::discrete;
    return m;
  }
  if (text.rfind("word:", 0) == 0) {
    m.kind = MetricKind::word;
    std::string rest = text.substr(5);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      std::string tok = rest.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() || tok.size() > 9 ||
          tok.find_first_not_of("0123456789") != std::string::npos) {
        fail(errc::invalid_argument,
             "word metric wants comma-separated generator indices, got \"" +
                 text + "\"");
      }
      m.word_generators.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (m.word_generators.empty()) {
      fail(errc::invalid_argument, "word metric needs at least one generator");
    }
    return m;
  }
  if (text.rfind("file:", 0) == 0) {
    m.kind = MetricKind::explicit_matrix;
    SpacePtr sp = space_from_json(load_json_file(text.substr(5)));
    m.labels = sp->labels();
    m.matrix.assign(sp->size(), std::vector<Rational>(sp->size(), Rational(0)));
    for (int i = 0; i < sp->size(); ++i) {
      for (int j = 0; j < sp->size(); ++j) {
        m.matrix[i][j] = sp->dist(i, j);
      }
    }
    return m;
  }
  fail(errc::invalid_argument,
       "metric must be discrete, word:<indices>, or file:<path>, got \"" +
           text + "\"");
}

Pipeline parse_pipeline(const std::string& text) {
  if (text == "compact") return Pipeline::compact;
  if (text == "polish") return Pipeline::polish;
  fail(errc::invalid_argument, "pipeline must be compact or polish, got \"" +
                                   text + "\"");
}

CoverStrategy parse_cover(const std::string& text) {
  if (text == "greedy") return CoverStrategy::greedy;
  if (text == "pairs") return CoverStrategy::pairs;
  fail(errc::invalid_argument,
       "cover must be greedy or pairs, got \"" + text + "\"");
}

OffsetSchedule parse_offsets(const std::string& text) {
  if (text == "harmonic") return OffsetSchedule::harmonic;
  if (text == "dyadic") return OffsetSchedule::dyadic;
  fail(errc::invalid_argument,
       "offsets must be harmonic or dyadic, got \"" + text + "\"");
}

std::string derived_path(const std::string& out, const std::string& suffix) {
  const std::string ext = ".json";
  if (out.size() > ext.size() &&
      out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + suffix;
  }
  return out + suffix;
}

bool verdict_ok(const RealizationReport& r) {
  return r.realized && r.recovery_verified && r.lemma1_verified;
}

void print_report_summary(std::ostream& out, const RealizationReport& r) {
  out << "group order: " << r.group_order << "\n";
  out << "isometry group order: " << r.iso_order_of_k << "\n";
  out << "cover size: " << r.cover_size << "\n";
  out << "embedding verified: " << (r.embedding_verified ? "yes" : "no")
      << "\n";
  out << "recovery verified: " << (r.recovery_verified ? "yes" : "no") << "\n";
  if (verdict_ok(r)) {
    out << "realized: yes\n";
  } else {
    out << "realized: no";
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
  }
}

}  // namespace

int run_realize(const CliConfig& config, std::ostream& out,
                std::ostream& err) {
  Group group{{{0}}, {"g0"}};
  MetricChoice metric;
  Pipeline pipeline;
  CoverStrategy cover;
  OffsetSchedule schedule;
  try {
    if (config.group_path.empty()) {
      fail(errc::invalid_argument, "realize requires --group");
    }
    group = group_from_json(load_json_file(config.group_path));
    metric = parse_metric(config.metric);
    pipeline = parse_pipeline(config.pipeline);
    cover = parse_cover(config.cover);
    schedule = parse_offsets(config.offsets);
    if (config.include_y_layer && pipeline == Pipeline::polish) {
      fail(errc::invalid_argument,
           "--include-y-layer only applies to the compact pipeline");
    }
  } catch (const Error& e) {
    return input_exit(err, e);
  }

  PipelineResult result;
  try {
    result = realize_pipeline(group, metric, pipeline, cover, schedule,
                              config.include_y_layer, config.node_budget);
  } catch (const Error& e) {
    switch (e.code()) {
      case errc::size_guard_exceeded:
        return semantic_exit(err, e);  // prints, returns 3
      case errc::lemma1_failed:
      case errc::cover_unsound:
      case errc::extension_not_isometric:
      case errc::spec_violation:
      case errc::zero_on_base:
      case errc::katetov_lower:
      case errc::katetov_upper:
      case errc::base_mismatch:
      case errc::not_supported:
      case errc::not_an_isometry:
        return semantic_exit(err, e);
      default:
        return input_exit(err, e);
    }
  }

  try {
    const std::string out_path =
        config.out_path.empty() ? "K.json" : config.out_path;
    const std::string prov_path =
        config.provenance_path.empty()
            ? derived_path(out_path, ".provenance.json")
            : config.provenance_path;
    const std::string report_path =
        config.report_path.empty() ? derived_path(out_path, ".report.json")
                                   : config.report_path;
    write_json_file(out_path, space_to_json(*result.assembly.K));
    write_json_file(prov_path, provenance_to_json(result.assembly));
    write_json_file(report_path, report_to_json(result.report));
    out << "space: " << out_path << " (" << result.assembly.K->size()
        << " points)\n";
  } catch (const Error& e) {
    return input_exit(err, e);
  }
  print_report_summary(out, result.report);
  return verdict_ok(result.report) ? 0 : 1;
}

int run_iso(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.space_path.empty()) {
      fail(errc::invalid_argument, "iso requires --space");
    }
    SpacePtr space = space_from_json(load_json_file(config.space_path));
    IsoGroup iso = config.naive ? naive_enumerate(space)
                                : enumerate_isometries(space, config.node_budget);
    Json j = iso_to_json(iso);
    if (config.out_path.empty()) {
      out << j.dump(2) << "\n";
    } else {
      write_json_file(config.out_path, j);
      out << "isometries: " << iso.order() << "\n";
    }
    return 0;
  } catch (const Error& e) {
    return input_exit(err, e);
  }
}

namespace {

/// The artifact layout written by run_realize, re-parsed for verification.
struct VerifyInputs {
  Group group{{{0}}, {"g0"}};
  SpacePtr k;
  ParsedProvenance pv;
};

/// Structural (exit-2) checks: files self-consistent and laid out the way
/// run_realize writes them.  Semantic checks happen later.
void check_artifact_layout(const VerifyInputs& in) {
  const int n = in.group.order();
  const int total = in.k->size();
  if (in.pv.group_order != n) {
    fail(errc::parse_error, "provenance group order does not match the group");
  }
  if (static_cast<int>(in.pv.points.size()) != total) {
    fail(errc::parse_error,
         "provenance lists " + std::to_string(in.pv.points.size()) +
             " points but the space has " + std::to_string(total));
  }
  for (int p = 0; p < total; ++p) {
    if (in.pv.labels[p] != in.k->label(p)) {
      fail(errc::parse_error, "provenance references a missing point: \"" +
                                  in.pv.labels[p] + "\"");
    }
  }
  if (total < n) {
    fail(errc::parse_error, "space is smaller than the group order");
  }
  const int cover_size = static_cast<int>(in.pv.cover.size());
  int apex_count = 0;
  std::vector<int> tag_of;  // tag index per position found
  for (int p = 0; p < total; ++p) {
    const PointProvenance& rec = in.pv.points[p];
    switch (rec.kind) {
      case PointKind::base:
        if (p >= n || rec.group_element != p) {
          fail(errc::parse_error,
               "base points must occupy indices 0..order-1 in element order");
        }
        break;
      case PointKind::orbit:
        if (p < n || rec.neighborhood < 0 || rec.neighborhood > cover_size) {
          fail(errc::parse_error, "orbit point has an out-of-range neighborhood");
        }
        if (rec.neighborhood == 0 && in.pv.pipeline != Pipeline::compact) {
          fail(errc::parse_error,
               "offset-zero layer points only occur in the compact pipeline");
        }
        if (rec.neighborhood >= 1 &&
            (rec.group_element < 0 || rec.group_element >= n)) {
          fail(errc::parse_error, "orbit point has an out-of-range element");
        }
        break;
      case PointKind::tag:
        if (in.pv.pipeline != Pipeline::polish || rec.neighborhood < 0 ||
            rec.neighborhood > cover_size) {
          fail(errc::parse_error, "unexpected tag point");
        }
        tag_of.push_back(rec.neighborhood);
        if (p != total - (cover_size + 1) + rec.neighborhood) {
          fail(errc::parse_error,
               "tag points must occupy the trailing indices in order");
        }
        break;
      case PointKind::apex:
        if (in.pv.pipeline != Pipeline::compact || p != total - 1) {
          fail(errc::parse_error, "the apex must be the last point");
        }
        ++apex_count;
        break;
    }
  }
  for (int x = 0; x < n; ++x) {
    if (in.pv.points[x].kind != PointKind::base) {
      fail(errc::parse_error,
           "base points must occupy indices 0..order-1 in element order");
    }
  }
  const bool degenerate = total == n;
  if (degenerate) {
    if (cover_size != 0) {
      fail(errc::parse_error, "a bare base space cannot carry a cover");
    }
  } else if (in.pv.pipeline == Pipeline::compact) {
    if (apex_count != 1) {
      fail(errc::parse_error, "compact artifacts need exactly one apex point");
    }
  } else {
    if (static_cast<int>(tag_of.size()) != cover_size + 1) {
      fail(errc::parse_error,
           "polish artifacts need tags 0..N, one per neighborhood plus the base");
    }
    std::set<int> seen(tag_of.begin(), tag_of.end());
    if (static_cast<int>(seen.size()) != cover_size + 1) {
      fail(errc::parse_error, "duplicate tag points");
    }
  }
  for (std::size_t i = 0; i < in.pv.offsets.size(); ++i) {
    if (in.pv.pipeline == Pipeline::polish) {
      if (!in.pv.offsets[i].is_zero()) {
        fail(errc::parse_error, "polish offsets must all be zero");
      }
    } else {
      if (!(in.pv.offsets[i] > Rational(0))) {
        fail(errc::parse_error, "compact offsets must be positive");
      }
      for (std::size_t j = i + 1; j < in.pv.offsets.size(); ++j) {
        if (in.pv.offsets[i] == in.pv.offsets[j]) {
          fail(errc::parse_error, "compact offsets must be pairwise distinct");
        }
      }
    }
  }
  for (const Neighborhood& nb : in.pv.cover) {
    for (int w : nb.witnesses) {
      if (w < 0 || w >= n) {
        fail(errc::parse_error, "cover witness index out of range");
      }
    }
    for (int t : nb.targets) {
      if (t < 0 || t >= n) {
        fail(errc::parse_error, "cover target index out of range");
      }
    }
  }
}

/// Rebuilds the assembly bookkeeping from artifacts, re-deriving every
/// orbit point by matching exact distance rows; any mismatch means the
/// artifacts do not describe a run of the construction.
Assembly rebuild_assembly(const VerifyInputs& in,
                          const LeftTranslationSpace& base,
                          const IsoGroup& iso_x) {
  const Group& group = in.group;
  const int n = group.order();
  const int total = in.k->size();

  Assembly a;
  a.K = in.k;
  a.X = base.space;
  a.pipeline = in.pv.pipeline;
  a.schedule = in.pv.schedule;
  a.cover = in.pv.cover;
  a.offsets = in.pv.offsets;
  a.x_set = PointSet::all(n);
  a.provenance = in.pv.points;

  check_cover(base, group, iso_x, a.cover);

  bool lemma1_ok = true;
  for (std::size_t i = 0; i < a.cover.size(); ++i) {
    auto [f, g] = build_pair_functions(base.space, a.cover[i], a.offsets[i]);
    if (!lemma1_check(base.space, iso_x, a.cover[i], f, g).passed) {
      lemma1_ok = false;
    }
  }
  a.lemma1_passed = lemma1_ok;

  // Match every claimed orbit point to the function it must represent.
  auto find_point = [&](const std::vector<Rational>& values,
                        const char* what) {
    int found = -1;
    for (int p = 0; p < total; ++p) {
      bool match = true;
      for (int x = 0; x < n; ++x) {
        if (in.k->dist(p, x) != values[x]) {
          match = false;
          break;
        }
      }
      if (match) {
        if (found >= 0) {
          fail(errc::spec_violation,
               std::string(what) + " matches two points of the space");
        }
        found = p;
      }
    }
    if (found < 0) {
      fail(errc::spec_violation,
           std::string(what) + " matches no point of the space");
    }
    return found;
  };

  std::set<int> accounted;
  for (int x = 0; x < n; ++x) accounted.insert(x);

  a.orbit_point.assign(a.cover.size(), std::vector<int>(n, -1));
  for (std::size_t i = 0; i < a.cover.size(); ++i) {
    KatetovMap f = staircase(
        base.space, {a.cover[i].witnesses, a.cover[i].epsilon, a.offsets[i]});
    for (int g = 0; g < n; ++g) {
      KatetovMap moved = pushforward(f, base.embed[g]);
      int p = find_point(moved.values(), "an orbit function");
      a.orbit_point[i][g] = p;
      accounted.insert(p);
    }
  }
  a.f_sets.reserve(a.cover.size());
  for (std::size_t i = 0; i < a.cover.size(); ++i) {
    std::vector<int> pts = a.orbit_point[i];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    a.f_sets.push_back(PointSet{std::move(pts)});
  }

  // Claimed orbit records must agree with the rebuilt assignment.
  for (int p = 0; p < total; ++p) {
    const PointProvenance& rec = in.pv.points[p];
    if (rec.kind == PointKind::orbit && rec.neighborhood >= 1) {
      if (a.orbit_point[rec.neighborhood - 1][rec.group_element] != p) {
        fail(errc::spec_violation,
             "point \"" + in.k->label(p) +
                 "\" does not carry the function its record claims");
      }
    }
  }

  // Offset-zero layer: rebuild the closed family and match each member.
  std::vector<int> extra_claims;
  for (int p = 0; p < total; ++p) {
    if (in.pv.points[p].kind == PointKind::orbit &&
        in.pv.points[p].neighborhood == 0) {
      extra_claims.push_back(p);
    }
  }
  if (!extra_claims.empty()) {
    std::map<std::vector<Rational>, int> slot_of;
    std::vector<KatetovMap> extras;
    auto add = [&](KatetovMap f) {
      if (slot_of.emplace(f.values(), static_cast<int>(extras.size())).second) {
        extras.push_back(std::move(f));
      }
    };
    for (const Neighborhood& nb : a.cover) {
      for (int g = 0; g < n; ++g) {
        auto translated = [&](const std::vector<int>& tuple) {
          std::vector<int> t;
          for (int q : tuple) t.push_back(base.embed[g].apply(q));
          return t;
        };
        add(staircase(base.space,
                      {translated(nb.witnesses), nb.epsilon, Rational(0)}));
        add(staircase(base.space,
                      {translated(nb.targets), nb.epsilon, Rational(0)}));
      }
    }
    add(staircase(base.space, {{}, Rational(1), Rational(0)}));
    if (extras.size() != extra_claims.size()) {
      fail(errc::spec_violation,
           "offset-zero layer size does not match its records");
    }
    a.extra_point.resize(extras.size());
    a.extra_translate.assign(extras.size(), std::vector<int>(n, -1));
    for (std::size_t j = 0; j < extras.size(); ++j) {
      int p = find_point(extras[j].values(), "an offset-zero layer function");
      a.extra_point[j] = p;
      accounted.insert(p);
      if (in.pv.points[p].kind != PointKind::orbit ||
          in.pv.points[p].neighborhood != 0) {
        fail(errc::spec_violation,
             "an offset-zero layer function landed on a mislabeled point");
      }
      for (int g = 0; g < n; ++g) {
        auto it = slot_of.find(pushforward(extras[j], base.embed[g]).values());
        if (it == slot_of.end()) {
          fail(errc::spec_violation, "offset-zero layer is not closed");
        }
        a.extra_translate[j][g] = it->second;
      }
    }
  }

  if (a.pipeline == Pipeline::compact && total > n) {
    a.apex = total - 1;
    accounted.insert(a.apex);
  }
  if (a.pipeline == Pipeline::polish && total > n) {
    const int first_tag = total - (static_cast<int>(a.cover.size()) + 1);
    for (int t = first_tag; t < total; ++t) {
      a.tag_points.push_back(t);
      accounted.insert(t);
    }
  }
  if (static_cast<int>(accounted.size()) != total) {
    fail(errc::spec_violation,
         "the space contains points no construction step explains");
  }
  return a;
}

}  // namespace

int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  VerifyInputs in;
  try {
    if (config.group_path.empty() || config.space_path.empty() ||
        config.provenance_path.empty()) {
      fail(errc::invalid_argument,
           "verify requires --group, --space, and --provenance");
    }
    in.group = group_from_json(load_json_file(config.group_path));
    in.k = space_from_json(load_json_file(config.space_path));
    in.pv = provenance_from_json(load_json_file(config.provenance_path));
    check_artifact_layout(in);
  } catch (const Error& e) {
    return input_exit(err, e);
  }

  RealizationReport report;
  try {
    const int n = in.group.order();
    std::vector<Rational> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) {
      labels.push_back(in.k->label(i));
      for (int j = 0; j < n; ++j) flat.push_back(in.k->dist(i, j));
    }
    LeftTranslationSpace base;
    base.space = unchecked_space(labels, std::move(flat), n);
    for (int g = 0; g < n; ++g) {
      std::vector<int> image(n);
      for (int x = 0; x < n; ++x) image[x] = in.group.product(g, x);
      base.embed.push_back(make_isometry(base.space, std::move(image)));
    }
    IsoGroup iso_x = enumerate_isometries(base.space, config.node_budget);
    Assembly assembly = rebuild_assembly(in, base, iso_x);
    report = verify_realization(assembly, in.group, base, config.node_budget);
  } catch (const Error& e) {
    return semantic_exit(err, e);
  }

  if (!config.report_path.empty()) {
    try {
      write_json_file(config.report_path, report_to_json(report));
    } catch (const Error& e) {
      return input_exit(err, e);
    }
  }
  print_report_summary(out, report);
  return verdict_ok(report) ? 0 : 1;
}

int run_cli(CliConfig config, std::ostream& out, std::ostream& err) {
  if (const char* env = std::getenv("ISOGROUP_NODE_BUDGET")) {
    std::string text(env);
    if (text.empty() ||
        text.find_first_not_of("0123456789") != std::string::npos) {
      err << "error: ISOGROUP_NODE_BUDGET must be a nonnegative integer\n";
      return 2;
    }
    errno = 0;
    long long value = std::strtoll(text.c_str(), nullptr, 10);
    if (errno != 0) {
      err << "error: ISOGROUP_NODE_BUDGET is out of range\n";
      return 2;
    }
    config.node_budget = value;
  }
  if (config.subcommand == "realize") return run_realize(config, out, err);
  if (config.subcommand == "iso") return run_iso(config, out, err);
  if (config.subcommand == "verify") return run_verify(config, out, err);
  err << "error: unknown subcommand \"" << config.subcommand << "\"\n";
  return 2;
}

}  // namespace isogroup
