#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "wsi/dataset.hpp"
#include "wsi/embeddings.hpp"
#include "wsi/error.hpp"
#include "wsi/induction.hpp"
#include "wsi/metrics.hpp"
#include "wsi/synth.hpp"

namespace wsi::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error("failed writing " + path);
}

// --- induce ---------------------------------------------------------------

struct InduceFlags {
  std::string method;
  std::string input;
  std::string output;
  std::string embeddings;
  std::string weighting;
  std::optional<std::size_t> k;
  std::string linkage;
  std::optional<double> threshold;
  std::uint64_t seed = 0;
  std::optional<double> damping;
  std::optional<double> preference;
  bool include_target = false;
  std::string log;
};

MethodConfig method_config(const InduceFlags& f) {
  using M = MethodConfig::Method;
  using A = ClusterMethod::Algorithm;
  const bool clustering = f.method == "ap" || f.method == "agglomerative" || f.method == "kmeans";
  const bool embedding_based = clustering || f.method == "nn-sub";

  if (embedding_based && f.embeddings.empty()) {
    throw UsageError("--method " + f.method + " requires --embeddings");
  }
  if (!f.weighting.empty() && !clustering) {
    throw UsageError("--weighting applies only to ap, agglomerative and kmeans");
  }
  if (f.method != "agglomerative" && (!f.linkage.empty() || f.threshold)) {
    throw UsageError("--linkage and --threshold apply only to agglomerative");
  }
  if (f.k && f.method != "agglomerative" && f.method != "kmeans" && f.method != "random") {
    throw UsageError("--k applies only to agglomerative, kmeans and random");
  }
  if (f.k && *f.k == 0) throw UsageError("--k must be at least 1");
  if ((f.damping || f.preference) && f.method != "ap") {
    throw UsageError("--damping and --preference apply only to ap");
  }

  MethodConfig cfg;
  cfg.seed = f.seed;
  cfg.exclude_target = !f.include_target;
  if (f.weighting == "tfidf") cfg.scheme = WeightingScheme::tfidf();
  if (f.weighting == "tfidf-chisq") cfg.scheme = WeightingScheme::tfidf_chisq();

  if (f.method == "one") {
    cfg.method = M::kBaselineOne;
  } else if (f.method == "singletons") {
    cfg.method = M::kBaselineSingletons;
  } else if (f.method == "random") {
    cfg.method = M::kBaselineRandom;
    cfg.random_k = f.k.value_or(2);
  } else if (f.method == "nn-sub") {
    cfg.method = M::kNnSubtraction;
  } else {
    cfg.method = M::kCluster;
    cfg.cluster.seed = f.seed;
    if (f.method == "ap") {
      cfg.cluster.algorithm = A::kAffinityPropagation;
      if (f.damping) {
        if (!(*f.damping >= 0.5 && *f.damping < 1.0)) {
          throw UsageError("--damping must lie in [0.5, 1)");
        }
        cfg.cluster.ap.damping = *f.damping;
      }
      cfg.cluster.ap.preference = f.preference;
    } else if (f.method == "kmeans") {
      cfg.cluster.algorithm = A::kKMeans;
      cfg.cluster.k = f.k.value_or(2);
    } else {
      cfg.cluster.algorithm = A::kAgglomerative;
      if (f.k.has_value() == f.threshold.has_value()) {
        throw UsageError("agglomerative needs exactly one of --k and --threshold");
      }
      cfg.cluster.linkage = f.linkage == "ward" ? Linkage::kWard : Linkage::kAverage;
      cfg.cluster.stop = f.k ? StopRule::fixed_k(*f.k) : StopRule::distance_threshold(*f.threshold);
    }
  }
  return cfg;
}

int cmd_induce(const InduceFlags& f, std::ostream& out, std::ostream& err) {
  const MethodConfig cfg = method_config(f);
  const Dataset input = load_tsv(f.input);
  std::optional<EmbeddingStore> store;
  if (!f.embeddings.empty()) store.emplace(load_embeddings(f.embeddings));

  const RunResult result = run(input, cfg, store ? &*store : nullptr);
  for (const std::string& w : result.report.warnings) err << "warning: " << w << '\n';
  if (!f.log.empty()) {
    std::ostringstream log;
    for (const std::string& w : result.report.warnings) log << w << '\n';
    write_file(f.log, log.str());
  }
  save_tsv(result.dataset, f.output);
  write_cluster_summary(result.report, out);
  return kOk;
}

// --- evaluate -------------------------------------------------------------

int cmd_evaluate(const std::string& gold_path, const std::string& pred_path,
                 const std::string& report_path, std::ostream& out) {
  const Dataset gold = load_tsv(gold_path);
  const Dataset pred = pred_path.empty() ? gold : load_tsv(pred_path);
  const EvaluationReport report = evaluate(gold, pred);
  std::ostringstream text;
  write_report(report, text);
  if (!report_path.empty()) write_file(report_path, text.str());
  out << text.str();
  return kOk;
}

// --- split, stats, synth, agreement, extract ------------------------------

int cmd_split(const std::string& input, const std::string& public_out,
              const std::string& private_out, const std::string& fraction, std::uint64_t seed,
              std::ostream& out) {
  SplitSpec spec;
  try {
    spec.public_fraction = Fraction::parse(fraction);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  spec.seed = seed;
  const SplitResult parts = split_public_private(load_tsv(input), spec);
  save_tsv(parts.public_part, public_out);
  save_tsv(parts.private_part, private_out);
  out << "part\twords\tcontexts\n";
  out << "public\t" << stats(parts.public_part).words << '\t' << parts.public_part.size() << '\n';
  out << "private\t" << stats(parts.private_part).words << '\t' << parts.private_part.size()
      << '\n';
  return kOk;
}

void print_stats(const DatasetStats& s, std::ostream& out) {
  out << "words\tsenses\tavg_senses\tcontexts\n";
  out << s.words << '\t';
  if (s.senses) {
    out << *s.senses << '\t' << std::fixed << std::setprecision(6) << *s.avg_senses;
    out << std::defaultfloat;
  } else {
    out << "NA\tNA";
  }
  out << '\t' << s.contexts << '\n';
}

int cmd_synth(const SynthSpec& spec, const std::string& dataset_path,
              const std::string& embeddings_path, const std::string& truth_path,
              std::ostream& out) {
  const SynthInstance inst = generate(spec);
  save_tsv(inst.dataset, dataset_path);
  save_embeddings(inst.store, embeddings_path);
  if (!truth_path.empty()) {
    std::ostringstream truth;
    write_truth(inst.truth, truth);
    write_file(truth_path, truth.str());
  }
  print_stats(stats(inst.dataset), out);
  return kOk;
}

int cmd_agreement(const std::string& input, std::ostream& out) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error("cannot open " + input);
  const double alpha = krippendorff_alpha(parse_annotation_matrix(in));
  out << std::fixed << std::setprecision(6) << alpha << '\n' << std::defaultfloat;
  return kOk;
}

int cmd_extract(const std::string& corpus_path, const std::vector<std::string>& targets,
                std::size_t window, std::size_t min_occurrences, const std::string& output,
                std::ostream& out) {
  if (window == 0) throw UsageError("--window must be at least 1");
  std::ifstream in(corpus_path, std::ios::binary);
  if (!in) throw Error("cannot open " + corpus_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  Dataset dataset;
  for (const std::string& target : targets) {
    for (ContextRecord& r : extract_contexts(text, target, window)) {
      dataset.records.push_back(std::move(r));
    }
  }
  dataset = filter_sparse_words(dataset, min_occurrences, 0);
  save_tsv(dataset, output);
  print_stats(stats(dataset), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word sense induction toolkit: induce, evaluate and inspect lexical-sample data"};
  app.name("wsi");
  app.require_subcommand(1);

  InduceFlags induce;
  auto* induce_cmd = app.add_subcommand("induce", "Fill predict_sense_id for every context");
  induce_cmd
      ->add_option("--method", induce.method, "Induction method")
      ->required()
      ->check(CLI::IsMember({"nn-sub", "ap", "agglomerative", "kmeans", "one", "singletons",
                             "random"}));
  induce_cmd->add_option("--input", induce.input, "Dataset TSV")->required();
  induce_cmd->add_option("--output", induce.output, "Predictions TSV")->required();
  induce_cmd->add_option("--embeddings", induce.embeddings, "Embeddings in text format");
  induce_cmd->add_option("--weighting", induce.weighting, "Token weighting for clustering")
      ->check(CLI::IsMember({"uniform", "tfidf", "tfidf-chisq"}));
  induce_cmd->add_option("--k", induce.k, "Number of clusters (agglomerative, kmeans, random)");
  induce_cmd->add_option("--linkage", induce.linkage, "Agglomerative linkage")
      ->check(CLI::IsMember({"average", "ward"}));
  induce_cmd->add_option("--threshold", induce.threshold, "Agglomerative distance threshold");
  induce_cmd->add_option("--seed", induce.seed, "Seed for kmeans and random");
  induce_cmd->add_option("--damping", induce.damping, "Affinity propagation damping");
  induce_cmd->add_option("--preference", induce.preference,
                         "Affinity propagation preference (default: median similarity)");
  induce_cmd->add_flag("--include-target", induce.include_target,
                       "Keep the target word in context vectors");
  induce_cmd->add_option("--log", induce.log, "Write run warnings to this file");

  std::string gold_path, pred_path, report_path;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions with ARI");
  evaluate_cmd->add_option("--gold", gold_path, "Gold TSV")->required();
  evaluate_cmd->add_option("--pred", pred_path,
                           "Predictions TSV (default: predictions in the gold file)");
  evaluate_cmd->add_option("--report", report_path, "Also write the report to this file");

  std::string split_input, public_out, private_out, fraction = "1/3";
  std::uint64_t split_seed = 0;
  auto* split_cmd = app.add_subcommand("split", "Split words into public and private parts");
  split_cmd->add_option("--input", split_input)->required();
  split_cmd->add_option("--public", public_out)->required();
  split_cmd->add_option("--private", private_out)->required();
  split_cmd->add_option("--fraction", fraction, "Public share of words, p/q or decimal")
      ->capture_default_str();
  split_cmd->add_option("--seed", split_seed)->capture_default_str();

  std::string stats_input;
  auto* stats_cmd = app.add_subcommand("stats", "Word, sense and context counts");
  stats_cmd->add_option("--input", stats_input)->required();

  SynthSpec spec;
  std::string synth_dataset, synth_embeddings, synth_truth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-sense benchmark");
  synth_cmd->add_option("--dataset", synth_dataset, "Output dataset TSV")->required();
  synth_cmd->add_option("--embeddings", synth_embeddings, "Output embeddings")->required();
  synth_cmd->add_option("--truth", synth_truth, "Output prototype cosine report");
  synth_cmd->add_option("--words", spec.n_words)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--senses", spec.senses_per_word)->capture_default_str()->check(CLI::PositiveNumber);
  synth_cmd->add_option("--contexts", spec.contexts_per_sense, "Contexts per sense")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--dim", spec.dim)->capture_default_str()->check(CLI::Range(2, 100000));
  synth_cmd->add_option("--vocab", spec.vocab_per_sense, "Topic tokens per sense")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--separation", spec.separation)->capture_default_str()->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--noise", spec.noise)->capture_default_str()->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", spec.seed)->capture_default_str();

  std::string agreement_input;
  auto* agreement_cmd = app.add_subcommand("agreement", "Krippendorff's alpha (nominal)");
  agreement_cmd->add_option("--input", agreement_input, "Units x coders TSV")->required();

  std::string corpus_path, extract_output;
  std::vector<std::string> targets;
  std::size_t window = 50, min_occurrences = 0;
  auto* extract_cmd = app.add_subcommand("extract", "Cut target-word contexts out of raw text");
  extract_cmd->add_option("--corpus", corpus_path, "UTF-8 text file")->required();
  extract_cmd->add_option("--target", targets, "Target word (repeatable)")->required();
  extract_cmd->add_option("--window", window, "Tokens kept on each side")->capture_default_str();
  extract_cmd->add_option("--min-occurrences", min_occurrences,
                          "Drop targets with fewer contexts")
      ->capture_default_str();
  extract_cmd->add_option("--output", extract_output)->required();

  std::vector<const char*> argv{"wsi"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*induce_cmd) return cmd_induce(induce, out, err);
    if (*evaluate_cmd) return cmd_evaluate(gold_path, pred_path, report_path, out);
    if (*split_cmd) return cmd_split(split_input, public_out, private_out, fraction, split_seed, out);
    if (*stats_cmd) {
      print_stats(stats(load_tsv(stats_input)), out);
      return kOk;
    }
    if (*synth_cmd) return cmd_synth(spec, synth_dataset, synth_embeddings, synth_truth, out);
    if (*agreement_cmd) return cmd_agreement(agreement_input, out);
    if (*extract_cmd) {
      return cmd_extract(corpus_path, targets, window, min_occurrences, extract_output, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace wsi::cli
