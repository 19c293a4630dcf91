// Copyright 2026 The clusterfold Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clusterfold/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "clusterfold/exchange_matrix.h"
#include "clusterfold/framed_seed.h"
#include "clusterfold/labeled_quiver.h"
#include "clusterfold/unfolding.h"
#include "json.hpp"

namespace clusterfold::cli {

namespace {

using nlohmann::json;

// Thrown for anything that maps to kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  ExchangeMatrix b;
  std::optional<SquareMatrix> c;  // present for seed documents
};

Input LoadInput(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '{') {
      FramedSeed seed = ParseSeedDocument(text);
      return {std::move(seed.b), std::move(seed.c)};
    }
    return {ParseMatrixText(text), std::nullopt};
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

FramedSeed SeedFrom(const Input& input) {
  if (input.c) return FramedSeed(input.b, *input.c);
  return FramedSeed(input.b, SquareMatrix::Identity(input.b.size()));
}

void CheckDirections(const MutationSequence& seq, std::size_t n) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] >= n) {
      throw UsageError("sequence item " + std::to_string(i + 1) + " (" +
                       std::to_string(seq[i] + 1) + ") outside 1.." +
                       std::to_string(n));
    }
  }
}

json MatrixJson(const SquareMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.size(); ++i) {
    auto r = m.row(i);
    rows.push_back(std::vector<Int>(r.begin(), r.end()));
  }
  return rows;
}

json SequenceJson(const MutationSequence& seq) {
  json out = json::array();
  for (Index k : seq) out.push_back(k + 1);
  return out;
}

void PrintMatrix(std::ostream& out, const char* name, const SquareMatrix& m) {
  out << name << ":\n";
  for (Index i = 0; i < m.size(); ++i) {
    out << ' ';
    for (Index j = 0; j < m.size(); ++j) out << ' ' << m(i, j);
    out << '\n';
  }
}

const char* Bool(bool v) { return v ? "true" : "false"; }

int RunClassify(const RunConfig& config, const Input& input,
                std::ostream& out) {
  const ClassificationReport r = Classify(input.b);
  if (config.json_out) {
    json doc;
    doc["size"] = input.b.size();
    doc["skew_symmetric"] = r.skew_symmetric;
    doc["symmetrizer"] = r.symmetrizer ? json(*r.symmetrizer) : json(nullptr);
    doc["sign_skew_symmetric"] = r.sign_skew_symmetric;
    doc["acyclic"] = r.acyclic;
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  out << "size: " << input.b.size() << '\n'
      << "skew-symmetric: " << Bool(r.skew_symmetric) << '\n'
      << "skew-symmetrizable: " << Bool(r.symmetrizer.has_value()) << '\n'
      << "symmetrizer:";
  if (r.symmetrizer) {
    for (Int d : *r.symmetrizer) out << ' ' << d;
  } else {
    out << " none";
  }
  out << '\n'
      << "sign-skew-symmetric: " << Bool(r.sign_skew_symmetric) << '\n'
      << "acyclic: " << Bool(r.acyclic) << '\n';
  return kExitOk;
}

int RunMutate(const RunConfig& config, const Input& input, std::ostream& out) {
  CheckDirections(*config.sequence, input.b.size());
  const FramedSeed result = ApplySequence(SeedFrom(input), *config.sequence);
  if (config.json_out) {
    out << FormatSeedDocument(result);
    return kExitOk;
  }
  out << "sequence: " << FormatSequence(*config.sequence) << '\n';
  PrintMatrix(out, "b", result.b);
  PrintMatrix(out, "c", result.c);
  return kExitOk;
}

int RunMgs(const RunConfig& config, const Input& input, std::ostream& out) {
  GreenSequenceReport report;
  try {
    report = SourceMaximalGreenSequence(input.b);
  } catch (const GreenSequenceViolation& e) {
    out << "violation: " << e.what() << '\n';
    return kExitViolated;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::optional<std::vector<GreenSequenceReport>> found;
  bool contains_source = true;
  const int max_len = config.max_len.value_or(static_cast<int>(input.b.size()));
  if (config.brute_force) {
    found = BruteForceGreenSearch(Extend(input.b), max_len);
    contains_source = false;
    for (const auto& g : *found) {
      contains_source |= g.sequence == report.sequence;
    }
  }

  if (config.json_out) {
    json doc;
    doc["sequence"] = SequenceJson(report.sequence);
    doc["green"] = report.is_green_sequence;
    doc["maximal"] = report.is_maximal;
    json cs = json::array();
    for (const auto& c : report.step_c_matrices) cs.push_back(MatrixJson(c));
    doc["c_matrices"] = cs;
    if (found) {
      json seqs = json::array();
      for (const auto& g : *found) seqs.push_back(SequenceJson(g.sequence));
      doc["brute_force"] = {{"max_len", max_len},
                            {"sequences", seqs},
                            {"contains_source", contains_source}};
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "sequence: " << FormatSequence(report.sequence) << '\n'
        << "green: " << Bool(report.is_green_sequence) << '\n'
        << "maximal: " << Bool(report.is_maximal) << '\n';
    PrintMatrix(out, "final c", report.step_c_matrices.back());
    if (found) {
      out << "brute force: " << found->size()
          << " maximal green sequences of length <= " << max_len << '\n';
      for (const auto& g : *found) {
        out << "  " << FormatSequence(g.sequence) << '\n';
      }
      out << "source sequence found: " << Bool(contains_source) << '\n';
    }
  }
  return contains_source ? kExitOk : kExitViolated;
}

int ReportSearch(const RunConfig& config, const SearchReport& r,
                 const char* property, std::ostream& out) {
  if (config.json_out) {
    json doc;
    doc["property"] = property;
    doc["depth"] = *config.depth;
    doc["ok"] = r.ok;
    doc["sequences_checked"] = r.sequences_checked;
    doc["counterexample"] =
        r.counterexample ? SequenceJson(*r.counterexample) : json(nullptr);
    out << doc.dump(2) << '\n';
  } else {
    out << property << " (depth <= " << *config.depth << "): " << Bool(r.ok)
        << '\n'
        << "sequences checked: " << r.sequences_checked << '\n';
    if (r.counterexample) {
      out << "counterexample: " << FormatSequence(*r.counterexample) << '\n';
    }
  }
  return r.ok ? kExitOk : kExitViolated;
}

int RunCoherence(const RunConfig& config, const Input& input,
                 std::ostream& out) {
  FramedSeed seed;
  try {
    seed = input.c ? SeedFrom(input) : Extend(input.b);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return ReportSearch(config, CheckSignCoherence(seed, *config.depth),
                      "sign-coherent", out);
}

int RunTotalMutability(const RunConfig& config, const Input& input,
                       std::ostream& out) {
  if (!IsSignSkewSymmetric(input.b)) {
    throw UsageError("input matrix is not sign-skew-symmetric");
  }
  return ReportSearch(config, CheckTotalMutability(input.b, *config.depth),
                      "totally sign-skew-symmetric", out);
}

int RunUnfold(const RunConfig& config, const Input& input, std::ostream& out) {
  LabeledQuiver q = [&] {
    try {
      return BuildTruncation(input.b, *config.truncation_m, config.framed);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  if (config.dot_out) {
    std::ofstream dot(*config.dot_out, std::ios::binary);
    if (!dot) throw UsageError("cannot write '" + *config.dot_out + "'");
    WriteDot(q, dot);
  }
  std::size_t frozen = 0;
  for (const Vertex& v : q.vertices()) frozen += v.kind == VertexKind::kFrozen;
  const int radius = q.interior_radius();
  const GammaReport gamma = CheckGammaConditions(q);
  const std::vector<Index> sources = OrbitSources(q);
  // Folding needs an interior vertex for every label, which shallow
  // truncations may lack.
  std::optional<FramedSeed> folded_seed;
  std::optional<ExchangeMatrix> folded_b;
  std::string fold_problem;
  try {
    if (config.framed) {
      folded_seed = FoldFramed(q);
      folded_b = folded_seed->b;
    } else {
      folded_b = FoldPrincipal(q);
    }
  } catch (const std::invalid_argument& e) {
    fold_problem = e.what();
  }

  if (config.json_out) {
    json doc;
    doc["m"] = *config.truncation_m;
    doc["framed"] = config.framed;
    doc["vertices"] = q.vertex_count();
    doc["mutable_vertices"] = q.vertex_count() - frozen;
    doc["frozen_vertices"] = frozen;
    doc["arrow_pairs"] = q.arrow_pair_count();
    doc["interior_radius"] =
        radius == kUnboundedRadius ? json(nullptr) : json(radius);
    doc["complete"] = radius == kUnboundedRadius;
    doc["gamma_ok"] = gamma.ok();
    doc["orbit_sources"] = SequenceJson(sources);
    if (folded_b) {
      doc["folding"] = {{"b", MatrixJson(*folded_b)}};
      if (folded_seed) doc["folding"]["c"] = MatrixJson(folded_seed->c);
    } else {
      doc["folding"] = nullptr;
      doc["folding_error"] = fold_problem;
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "truncation depth: " << *config.truncation_m << '\n'
        << "framed: " << Bool(config.framed) << '\n'
        << "vertices: " << q.vertex_count() << " (mutable "
        << q.vertex_count() - frozen << ", frozen " << frozen << ")\n"
        << "arrow pairs: " << q.arrow_pair_count() << '\n'
        << "interior radius: ";
    if (radius == kUnboundedRadius) {
      out << "unbounded (complete)\n";
    } else {
      out << radius << '\n';
    }
    out << "gamma conditions: " << (gamma.ok() ? "ok" : "violated") << '\n'
        << "orbit sources: " << FormatSequence(sources) << '\n';
    if (folded_b) {
      PrintMatrix(out, "folded b", *folded_b);
      if (folded_seed) PrintMatrix(out, "folded c", folded_seed->c);
    } else {
      out << "folding: unavailable (" << fold_problem << ")\n";
    }
  }
  return gamma.ok() ? kExitOk : kExitViolated;
}

int RunVerifyUnfolding(const RunConfig& config, const Input& input,
                       std::ostream& out) {
  CheckDirections(*config.sequence, input.b.size());
  CommutationReport r;
  try {
    r = VerifyUnfoldingCommutation(input.b, *config.sequence,
                                   *config.truncation_m);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (config.json_out) {
    json doc;
    doc["sequence"] = SequenceJson(*config.sequence);
    doc["m"] = *config.truncation_m;
    doc["ok"] = r.ok;
    doc["first_divergence"] =
        r.first_divergence ? json(*r.first_divergence) : json(nullptr);
    doc["detail"] = r.detail;
    out << doc.dump(2) << '\n';
  } else if (r.ok) {
    out << "commutes: true (" << config.sequence->size() << " steps, m = "
        << *config.truncation_m << ")\n";
  } else {
    out << "commutes: false\n"
        << "first divergence at step " << *r.first_divergence << ": "
        << r.detail << '\n';
  }
  return r.ok ? kExitOk : kExitViolated;
}

}  // namespace

std::optional<std::string> Validate(const RunConfig& config) {
  auto positive = [](const std::optional<int>& v) { return v && *v > 0; };
  switch (config.subcommand) {
    case Subcommand::kClassify:
      break;
    case Subcommand::kMutate:
      if (!config.sequence) return "mutate requires --seq";
      break;
    case Subcommand::kMgs:
      if (config.max_len && *config.max_len <= 0) {
        return "--max-len must be a positive integer";
      }
      break;
    case Subcommand::kCoherence:
    case Subcommand::kTotalMutability:
      if (!positive(config.depth)) return "--depth must be a positive integer";
      break;
    case Subcommand::kUnfold:
      if (!positive(config.truncation_m)) {
        return "--m must be a positive integer";
      }
      break;
    case Subcommand::kVerifyUnfolding:
      if (!config.sequence) return "verify-unfolding requires --seq";
      if (!positive(config.truncation_m)) {
        return "--m must be a positive integer";
      }
      break;
  }
  if (config.input_path.empty()) return "missing input file";
  return std::nullopt;
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (auto problem = Validate(config)) {
    err << "usage error: " << *problem << '\n';
    return kExitUsage;
  }
  try {
    const Input input = LoadInput(config.input_path);
    switch (config.subcommand) {
      case Subcommand::kClassify:
        return RunClassify(config, input, out);
      case Subcommand::kMutate:
        return RunMutate(config, input, out);
      case Subcommand::kMgs:
        return RunMgs(config, input, out);
      case Subcommand::kCoherence:
        return RunCoherence(config, input, out);
      case Subcommand::kUnfold:
        return RunUnfold(config, input, out);
      case Subcommand::kVerifyUnfolding:
        return RunVerifyUnfolding(config, input, out);
      case Subcommand::kTotalMutability:
        return RunTotalMutability(config, input, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << " (entries exceed 64 bits)\n";
  }
  return kExitUsage;
}

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Exact seed mutation, c-vectors and unfoldings of "
               "sign-skew-symmetric matrices"};
  app.name(args.empty() ? "clusterfold" : args.front());
  app.require_subcommand(1);

  RunConfig config;
  std::string seq_text;
  int depth = 0, max_len = 0, m = 0;
  std::string dot_path;

  struct SubcommandInfo {
    const char* name;
    Subcommand sub;
    const char* help;
  };
  const SubcommandInfo infos[] = {
      {"classify", Subcommand::kClassify, "Classify the input matrix"},
      {"mutate", Subcommand::kMutate, "Apply a mutation sequence to (B, C)"},
      {"mgs", Subcommand::kMgs, "Maximal green sequence from source numbering"},
      {"coherence", Subcommand::kCoherence, "Exhaustive sign-coherence check"},
      {"unfold", Subcommand::kUnfold, "Build a truncated unfolding quiver"},
      {"verify-unfolding", Subcommand::kVerifyUnfolding,
       "Check that folding commutes with mutation"},
      {"total-mutability", Subcommand::kTotalMutability,
       "Exhaustive sign-skew-symmetry check under mutation"},
  };
  std::vector<std::pair<CLI::App*, Subcommand>> subs;
  for (const SubcommandInfo& info : infos) {
    CLI::App* sub = app.add_subcommand(info.name, info.help);
    sub->add_option("input", config.input_path,
                    "Matrix text file or seed document")
        ->required();
    sub->add_flag("--json,--json_out", config.json_out, "Emit JSON");
    switch (info.sub) {
      case Subcommand::kMutate:
      case Subcommand::kVerifyUnfolding:
        sub->add_option("-s,--seq", seq_text,
                        "Comma-separated 1-based directions, e.g. 1,2");
        break;
      default:
        break;
    }
    switch (info.sub) {
      case Subcommand::kCoherence:
      case Subcommand::kTotalMutability:
        sub->add_option("-d,--depth", depth, "Maximal sequence length");
        break;
      case Subcommand::kMgs:
        sub->add_flag("--brute-force", config.brute_force,
                      "Cross-check against exhaustive search");
        sub->add_option("--max-len", max_len,
                        "Length bound for --brute-force (default n)");
        break;
      case Subcommand::kUnfold:
        sub->add_flag("--framed", config.framed, "Add frozen vertices");
        sub->add_option("--dot", dot_path, "Write Graphviz output here");
        [[fallthrough]];
      case Subcommand::kVerifyUnfolding:
        sub->add_option("-m,--m", m, "Truncation depth");
        break;
      default:
        break;
    }
    subs.emplace_back(sub, info.sub);
  }

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }

  auto given = [](CLI::App* sub, const std::string& name) {
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  for (const auto& [sub, kind] : subs) {
    if (!sub->parsed()) continue;
    config.subcommand = kind;
    if (given(sub, "--seq")) {
      try {
        config.sequence = ParseSequence(seq_text);
      } catch (const std::invalid_argument& e) {
        err << "usage error: --seq: " << e.what() << '\n';
        return kExitUsage;
      }
    }
    if (given(sub, "--depth")) {
      config.depth = depth;
    }
    if (given(sub, "--max-len")) {
      config.max_len = max_len;
    }
    if (given(sub, "--m")) {
      config.truncation_m = m;
    }
    if (given(sub, "--dot")) {
      config.dot_out = dot_path;
    }
  }
  if (auto problem = Validate(config)) {
    err << "usage error: " << *problem << '\n' << "run with --help for usage\n";
    return kExitUsage;
  }
  return Run(config, out, err);
}

}  // namespace clusterfold::cli
