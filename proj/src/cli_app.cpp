#include "bootuniq/cli_app.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bootuniq/approx.hpp"
#include "bootuniq/moments.hpp"
#include "bootuniq/multivariate.hpp"
#include "bootuniq/simulate.hpp"

namespace bootuniq {

namespace {

using ordered_json = nlohmann::ordered_json;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;            // empty = stdout
  std::string stamp = "unspecified";
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;
};

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_scalar(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

void write_stream(std::ostream& os, const Table& table, const std::string& command,
                  const ordered_json& parameters, const ordered_json& extra_metadata,
                  const OutputOptions& opts) {
  if (opts.format == "csv") {
    os << join(table.columns, ',') << '\n';
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const auto& v : row) cells.push_back(csv_scalar(v));
      os << join(cells, ',') << '\n';
    }
    return;
  }
  ordered_json doc;
  doc["metadata"]["tool"] = kToolName;
  doc["metadata"]["version"] = kToolVersion;
  doc["metadata"]["command"] = command;
  doc["metadata"]["parameters"] = parameters;
  doc["metadata"]["timestamp"] = opts.stamp;
  for (const auto& [key, value] : extra_metadata.items()) doc["metadata"][key] = value;
  doc["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj;
    for (size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

void emit(const Table& table, const std::string& command, const ordered_json& parameters,
          const ordered_json& extra_metadata, const OutputOptions& opts) {
  if (opts.out_path.empty()) {
    write_stream(std::cout, table, command, parameters, extra_metadata, opts);
    return;
  }
  std::filesystem::path path(opts.out_path);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("BOOTUNIQ_OUT_DIR")) path = std::filesystem::path(dir) / path;
  }
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output path: " + path.string());
  write_stream(os, table, command, parameters, extra_metadata, opts);
}

ordered_json json_or_null(bool defined, double v) {
  return defined ? ordered_json(v) : ordered_json(nullptr);
}

void add_output_options(CLI::App* sub, OutputOptions& opts) {
  sub->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path,
                  "Write to this path instead of stdout (relative paths resolve under "
                  "$BOOTUNIQ_OUT_DIR when set)");
  sub->add_option("--stamp", opts.stamp,
                  "Caller-supplied timestamp string recorded in JSON metadata")
      ->capture_default_str();
}

// ---- subcommand bodies ----

void cmd_dist(unsigned long items, unsigned long draws, bool with_cdf,
              const OutputOptions& opts) {
  UniqueCountDistribution dist = distribution(items, draws);
  Table table;
  table.columns = {"k", "probability", "probability_double"};
  if (with_cdf) {
    table.columns.push_back("cdf");
    table.columns.push_back("cdf_double");
  }
  Rational run(0);
  for (unsigned long k = 0; k < dist.probs.size(); ++k) {
    const ExactProb& p = dist.probs[k];
    std::vector<ordered_json> row{k, p.str(), p.to_double()};
    if (with_cdf) {
      run += p.rational();
      row.emplace_back(run.get_str());
      row.emplace_back(run.get_d());
    }
    table.rows.push_back(std::move(row));
  }
  ordered_json params{{"N", items}, {"A", draws}, {"cdf", with_cdf}};
  emit(table, "dist", params, ordered_json::object(), opts);
}

void cmd_moments(unsigned long items, unsigned long draws, unsigned long order, bool central,
                 bool allow_high_order, const OutputOptions& opts) {
  Table table;
  table.columns = {"order", "moment", "moment_double"};
  for (unsigned long t = 0; t <= order; ++t) {
    Rational m = central ? central_moment(items, draws, t, allow_high_order)
                         : raw_moment(items, draws, t, allow_high_order);
    table.rows.push_back({t, m.get_str(), m.get_d()});
  }
  ordered_json params{{"N", items}, {"A", draws}, {"t", order}, {"central", central}};
  emit(table, "moments", params, ordered_json::object(), opts);
}

void cmd_check(unsigned long items, unsigned long draws, const OutputOptions& opts) {
  ApproxReport report = approx_report(items, draws);
  Table table;
  table.columns = {"N", "A", "madcd", "jsd", "jsd_log2", "heuristic_pass", "mean", "sd"};
  table.rows.push_back({items, draws, report.madcd, report.jsd, report.jsd_log2,
                        report.heuristic_pass, report.mean, report.sd});
  ordered_json params{{"N", items}, {"A", draws}};
  emit(table, "check", params, ordered_json::object(), opts);
}

void cmd_grid(const std::string& baseline, unsigned long n_min, unsigned long n_max,
              unsigned long a_min, unsigned long a_max, unsigned long p_step_den,
              unsigned long cap, unsigned threads, const OutputOptions& opts) {
  unsigned long effective_cap = cap != 0 ? cap : (baseline == "binomial" ? 400 : 150);
  if (n_max > effective_cap || (baseline == "unique" && a_max > effective_cap)) {
    throw ResourceLimitError("grid range exceeds cap " + std::to_string(effective_cap) +
                             "; raise --cap explicitly for larger scans");
  }
  Table table;
  ordered_json params;
  if (baseline == "unique") {
    table.columns = {"N", "A", "madcd", "jsd", "heuristic_pass"};
    for (const UniqueCell& cell : unique_grid(n_min, n_max, a_min, a_max, threads)) {
      table.rows.push_back({cell.items, cell.draws, json_or_null(cell.defined, cell.madcd),
                            json_or_null(cell.defined, cell.jsd), cell.heuristic_pass});
    }
    params = ordered_json{{"baseline", baseline}, {"n_min", n_min}, {"n_max", n_max},
                          {"a_min", a_min},       {"a_max", a_max}, {"cap", effective_cap}};
  } else {
    table.columns = {"n_b", "p", "p_double", "madcd", "jsd", "heuristic_pass"};
    for (const BinomialCell& cell : binomial_grid(n_max, p_step_den, threads)) {
      table.rows.push_back({cell.trials, cell.p.get_str(), cell.p.get_d(), cell.madcd, cell.jsd,
                            cell.rules.combined});
    }
    params = ordered_json{{"baseline", baseline},
                          {"n_max", n_max},
                          {"p_step_den", p_step_den},
                          {"cap", effective_cap}};
  }
  emit(table, "grid", params, ordered_json::object(), opts);
}

void cmd_boundary(unsigned long n_min, unsigned long n_max, unsigned long cap,
                  const OutputOptions& opts) {
  unsigned long effective_cap = cap != 0 ? cap : 150;
  if (n_max > effective_cap) {
    throw ResourceLimitError("boundary range exceeds cap " + std::to_string(effective_cap) +
                             "; raise --cap explicitly for larger scans");
  }
  BoundaryScan scan = boundary_scan(n_min, n_max);
  Table table;
  table.columns = {"N", "A_lower", "A_upper", "madcd_lower", "madcd_upper"};
  for (const BoundaryPoint& point : scan.points) {
    table.rows.push_back(
        {point.items, point.a_lower, point.a_upper, point.madcd_lower, point.madcd_upper});
  }
  ordered_json params{{"n_min", n_min}, {"n_max", n_max}, {"cap", effective_cap}};
  ordered_json extra{{"slope_lower", scan.slope_lower}, {"slope_upper", scan.slope_upper}};
  if (opts.format == "csv") {
    std::cerr << "slope_lower=" << format_double(scan.slope_lower)
              << " slope_upper=" << format_double(scan.slope_upper) << '\n';
  }
  emit(table, "boundary", params, extra, opts);
}

void cmd_joint(const std::vector<unsigned long>& sizes, unsigned long draws,
               std::optional<size_t> marginal, unsigned long long comp_cap,
               const OutputOptions& opts) {
  CategoryProfile profile{sizes};
  profile.validate();
  ordered_json params{{"sizes", sizes}, {"A", draws}, {"comp_cap", comp_cap}};
  Table table;
  if (marginal) {
    size_t s = *marginal;
    if (s < 1 || s > profile.categories()) {
      throw std::out_of_range("marginal index must be in 1.." +
                              std::to_string(profile.categories()));
    }
    params["marginal"] = s;
    UniqueCountDistribution dist = marginal_category_distribution(profile, draws, s - 1);
    table.columns = {"k", "probability", "probability_double"};
    for (unsigned long k = 0; k < dist.probs.size(); ++k) {
      table.rows.push_back({k, dist.probs[k].str(), dist.probs[k].to_double()});
    }
    emit(table, "joint", params, ordered_json::object(), opts);
    return;
  }
  JointUniqueDistribution joint = joint_distribution(profile, draws, comp_cap);
  for (size_t s = 1; s <= profile.categories(); ++s) {
    table.columns.push_back("k_" + std::to_string(s));
  }
  table.columns.push_back("numerator");
  table.columns.push_back("denominator");
  table.columns.push_back("probability_double");
  for (const auto& [vec, prob] : joint.pmf) {
    std::vector<ordered_json> row;
    row.reserve(vec.size() + 3);
    for (long ks : vec) row.emplace_back(ks);
    row.emplace_back(prob.numerator().get_str());
    row.emplace_back(prob.denominator().get_str());
    row.emplace_back(prob.to_double());
    table.rows.push_back(std::move(row));
  }
  emit(table, "joint", params, ordered_json::object(), opts);
}

void cmd_sample(const std::vector<unsigned long>& sizes, unsigned long draws, uint64_t replicates,
                uint64_t seed, unsigned threads, unsigned long long comp_cap,
                const OutputOptions& opts) {
  SimConfig config{seed, replicates, sizes, draws};
  EmpiricalDistribution emp = empirical_distribution(config, threads);
  bool scalar = sizes.size() == 1;

  std::optional<double> tv;
  if (scalar) {
    if (draws <= 1000) tv = tv_distance(emp, distribution(sizes[0], draws));
  } else {
    try {
      tv = tv_distance(emp, joint_distribution(CategoryProfile{sizes}, draws, comp_cap));
    } catch (const ResourceLimitError&) {
      // joint support too large to tabulate; emit the empirical table alone
    }
  }

  Table table;
  if (scalar) {
    table.columns = {"k", "probability", "probability_double", "count"};
    unsigned long kmax = std::min(sizes[0], draws);
    for (unsigned long k = 0; k <= kmax; ++k) {
      auto it = emp.counts.find({static_cast<long>(k)});
      uint64_t count = it == emp.counts.end() ? 0 : it->second;
      ExactProb freq{BigInt(count), BigInt(replicates)};
      table.rows.push_back({k, freq.str(), freq.to_double(), count});
    }
  } else {
    for (size_t s = 1; s <= sizes.size(); ++s) table.columns.push_back("k_" + std::to_string(s));
    table.columns.push_back("probability");
    table.columns.push_back("probability_double");
    table.columns.push_back("count");
    for (const auto& [vec, count] : emp.counts) {
      std::vector<ordered_json> row;
      row.reserve(vec.size() + 3);
      for (long ks : vec) row.emplace_back(ks);
      ExactProb freq{BigInt(count), BigInt(replicates)};
      row.emplace_back(freq.str());
      row.emplace_back(freq.to_double());
      row.emplace_back(count);
      table.rows.push_back(std::move(row));
    }
  }
  ordered_json params{{"sizes", sizes}, {"A", draws}, {"reps", replicates}, {"seed", seed}};
  ordered_json extra;
  extra["tv_distance"] = tv ? ordered_json(*tv) : ordered_json(nullptr);
  if (opts.format == "csv" && tv) {
    std::cerr << "tv_distance=" << format_double(*tv) << '\n';
  }
  emit(table, "sample", params, extra, opts);
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Exact and approximate distributions of unique item counts in bootstrap samples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // dist
  auto* dist_cmd = app.add_subcommand("dist", "Exact pmf (and cdf) of the unique count");
  unsigned long dist_n = 0, dist_a = 0;
  bool dist_cdf = false;
  OutputOptions dist_opts;
  dist_cmd->add_option("N", dist_n, "Original sample size")->required();
  dist_cmd->add_option("A", dist_a, "Number of draws")->required();
  dist_cmd->add_flag("--cdf", dist_cdf, "Include cumulative columns");
  add_output_options(dist_cmd, dist_opts);
  dist_cmd->callback([&] { cmd_dist(dist_n, dist_a, dist_cdf, dist_opts); });

  // moments
  auto* mom_cmd = app.add_subcommand("moments", "Exact raw or central moments up to order t");
  unsigned long mom_n = 0, mom_a = 0, mom_t = 2;
  bool mom_central = false, mom_high = false;
  OutputOptions mom_opts;
  mom_cmd->add_option("N", mom_n, "Original sample size")->required();
  mom_cmd->add_option("A", mom_a, "Number of draws")->required();
  mom_cmd->add_option("--t", mom_t, "Highest moment order")->capture_default_str();
  mom_cmd->add_flag("--central", mom_central, "Central instead of raw moments");
  mom_cmd->add_flag("--allow-high-order", mom_high, "Permit orders above the default cap");
  add_output_options(mom_cmd, mom_opts);
  mom_cmd->callback([&] { cmd_moments(mom_n, mom_a, mom_t, mom_central, mom_high, mom_opts); });

  // check
  auto* check_cmd = app.add_subcommand("check", "Normal-approximation quality for one (N, A)");
  unsigned long check_n = 0, check_a = 0;
  OutputOptions check_opts;
  check_cmd->add_option("N", check_n, "Original sample size")->required();
  check_cmd->add_option("A", check_a, "Number of draws")->required();
  add_output_options(check_cmd, check_opts);
  check_cmd->callback([&] { cmd_check(check_n, check_a, check_opts); });

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "MADCD/JSD scan over a parameter grid");
  std::string grid_baseline = "unique";
  unsigned long grid_nmin = 1, grid_nmax = 150, grid_amin = 1, grid_amax = 150;
  unsigned long grid_pden = 200, grid_cap = 0;
  unsigned grid_threads = 1;
  OutputOptions grid_opts;
  grid_cmd->add_option("--baseline", grid_baseline, "Distribution family to scan")
      ->check(CLI::IsMember({"unique", "binomial"}))
      ->capture_default_str();
  grid_cmd->add_option("--n-min", grid_nmin, "Smallest N (or n_b)")->capture_default_str();
  grid_cmd->add_option("--n-max", grid_nmax, "Largest N (or n_b)")->capture_default_str();
  grid_cmd->add_option("--a-min", grid_amin, "Smallest A (unique baseline)")->capture_default_str();
  grid_cmd->add_option("--a-max", grid_amax, "Largest A (unique baseline)")->capture_default_str();
  grid_cmd->add_option("--p-step-den", grid_pden, "p grid = i/this, 0 < i < this (binomial)")
      ->capture_default_str();
  grid_cmd->add_option("--cap", grid_cap, "Range cap; 0 = default (150 unique, 400 binomial)")
      ->capture_default_str();
  grid_cmd->add_option("--threads", grid_threads, "Worker threads")->capture_default_str();
  add_output_options(grid_cmd, grid_opts);
  grid_cmd->callback([&] {
    cmd_grid(grid_baseline, grid_nmin, grid_nmax, grid_amin, grid_amax, grid_pden, grid_cap,
             grid_threads, grid_opts);
  });

  // boundary
  auto* bnd_cmd = app.add_subcommand("boundary", "MADCD along the heuristic region boundaries");
  unsigned long bnd_nmin = 6, bnd_nmax = 150, bnd_cap = 0;
  OutputOptions bnd_opts;
  bnd_cmd->add_option("--n-min", bnd_nmin, "Smallest N")->capture_default_str();
  bnd_cmd->add_option("--n-max", bnd_nmax, "Largest N")->capture_default_str();
  bnd_cmd->add_option("--cap", bnd_cap, "Range cap; 0 = default 150")->capture_default_str();
  add_output_options(bnd_cmd, bnd_opts);
  bnd_cmd->callback([&] { cmd_boundary(bnd_nmin, bnd_nmax, bnd_cap, bnd_opts); });

  // joint
  auto* joint_cmd = app.add_subcommand("joint", "Exact joint (or marginal) per-category pmf");
  std::vector<unsigned long> joint_sizes;
  unsigned long joint_a = 0;
  size_t joint_marginal = 0;
  unsigned long long joint_cap = kCompositionCap;
  OutputOptions joint_opts;
  joint_cmd->add_option("sizes", joint_sizes, "Category sizes N_1 N_2 ...")->required();
  joint_cmd->add_option("--A", joint_a, "Number of draws")->required();
  auto* marg_opt = joint_cmd->add_option("--marginal", joint_marginal,
                                         "Emit the marginal of this category (1-based)");
  joint_cmd->add_option("--comp-cap", joint_cap, "Composition-count cap")->capture_default_str();
  add_output_options(joint_cmd, joint_opts);
  joint_cmd->callback([&] {
    std::optional<size_t> marginal;
    if (marg_opt->count() > 0) marginal = joint_marginal;
    cmd_joint(joint_sizes, joint_a, marginal, joint_cap, joint_opts);
  });

  // sample
  auto* samp_cmd = app.add_subcommand("sample", "Seeded Monte Carlo empirical distribution");
  std::vector<unsigned long> samp_sizes;
  unsigned long samp_a = 0;
  uint64_t samp_reps = 0, samp_seed = 0;
  unsigned samp_threads = 1;
  unsigned long long samp_cap = kCompositionCap;
  OutputOptions samp_opts;
  samp_cmd->add_option("sizes", samp_sizes, "N (or category sizes N_1 N_2 ...)")->required();
  samp_cmd->add_option("--A", samp_a, "Number of draws")->required();
  samp_cmd->add_option("--reps", samp_reps, "Replicates")->required()->check(CLI::PositiveNumber);
  samp_cmd->add_option("--seed", samp_seed, "RNG seed")->capture_default_str();
  samp_cmd->add_option("--threads", samp_threads, "Worker threads")->capture_default_str();
  samp_cmd->add_option("--comp-cap", samp_cap, "Composition cap for the exact joint comparison")
      ->capture_default_str();
  add_output_options(samp_cmd, samp_opts);
  samp_cmd->callback([&] {
    cmd_sample(samp_sizes, samp_a, samp_reps, samp_seed, samp_threads, samp_cap, samp_opts);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace bootuniq
