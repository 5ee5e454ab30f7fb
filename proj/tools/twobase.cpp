// twobase: exact counting and enumeration of additive 2-bases, with exact
// and Monte Carlo verification of the probabilistic bounds behind their
// exponential growth.

#include "twobase/bounds.hpp"
#include "twobase/cache.hpp"
#include "twobase/count.hpp"
#include "twobase/errors.hpp"
#include "twobase/oeis.hpp"
#include "twobase/probability.hpp"
#include "twobase/subset.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using twobase::BigInt;
using twobase::BigRational;
using twobase::CountOptions;
using twobase::CountRecord;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitLimit = 2;
constexpr int kExitVerifyFailed = 3;
constexpr int kExitParse = 4;

struct GlobalConfig {
    CountOptions counts;
    std::string cache_path;
    std::uint64_t seed = 1;
};

ordered_json record_json(const twobase::CacheRecord& rec) {
    ordered_json j;
    j["schema_version"] = rec.schema_version;
    j["n"] = rec.n;
    j["gamma"] = rec.gamma.str();
    j["gamma_next_covered"] = rec.gamma_next_covered.str();
    j["method"] = rec.method;
    j["elapsed_s"] = rec.elapsed_s;
    return j;
}

int cmd_count(const GlobalConfig& cfg, int n, const std::string& method, int partition_depth) {
    CountRecord rec;
    if (method == "brute") {
        rec = twobase::count_brute(n, cfg.counts);
    } else if (method == "dfs") {
        rec = twobase::count_dfs(n, partition_depth, cfg.counts);
    } else { // auto: brute inside its ceiling, dfs beyond
        rec = n <= cfg.counts.brute_ceiling ? twobase::count_brute(n, cfg.counts)
                                            : twobase::count_dfs(n, partition_depth, cfg.counts);
    }
    twobase::CacheRecord line = twobase::to_cache_record(rec);
    std::cout << record_json(line).dump() << "\n";
    if (!cfg.cache_path.empty()) {
        twobase::cache_append(cfg.cache_path, line);
        twobase::cache_load(cfg.cache_path); // validates the file, including this write
    }
    return kExitOk;
}

int cmd_enumerate(const GlobalConfig& cfg, int n) {
    twobase::enumerate_bases(
        n, [](const twobase::SubsetMask& m) { std::cout << m.str() << "\n"; }, cfg.counts);
    return kExitOk;
}

void write_table(std::ostream& out, const std::vector<twobase::GrowthRow>& rows) {
    out << "n,gamma,gamma_next_covered,delta_num,delta_den,ratio_num,ratio_den,ratio_float\n";
    char buf[64];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.12g", row.ratio_float);
        out << row.n << ',' << row.gamma.str() << ',' << row.gamma_next_covered.str() << ','
            << row.delta.num().str() << ',' << row.delta.den().str() << ','
            << row.ratio.num().str() << ',' << row.ratio.den().str() << ',' << buf << "\n";
    }
}

int cmd_table(const GlobalConfig& cfg, int max_n, const std::string& out_path) {
    auto rows = twobase::growth_table(max_n, cfg.counts);
    if (out_path.empty() || out_path == "-") {
        write_table(std::cout, rows);
    } else {
        std::ofstream out(out_path);
        if (!out) twobase::raise(twobase::ErrorKind::Internal, "cannot write " + out_path);
        write_table(out, rows);
        if (!out.good()) twobase::raise(twobase::ErrorKind::Internal, "write failed: " + out_path);
    }
    if (!cfg.cache_path.empty()) {
        for (const auto& row : rows) {
            twobase::CacheRecord rec;
            rec.n = row.n;
            rec.gamma = row.gamma;
            rec.gamma_next_covered = row.gamma_next_covered;
            rec.method = "dfs";
            twobase::cache_append(cfg.cache_path, rec);
        }
        twobase::cache_load(cfg.cache_path);
    }
    return kExitOk;
}

int cmd_mc_uncovered(const GlobalConfig& cfg, int n, std::uint64_t samples) {
    auto stats = twobase::mc_uncovered(n, samples, cfg.seed, cfg.counts.threads);
    ordered_json j;
    j["n"] = n;
    j["samples"] = stats.samples;
    j["seed"] = stats.seed;
    j["mean"] = stats.mean();
    j["stderr"] = stats.stderr_of_mean();
    j["exact_mean"] = twobase::exact_expected_uncovered(n).to_double();
    ordered_json per_k = ordered_json::array();
    for (std::size_t k = 0; k < stats.per_k_misses.size(); ++k) {
        ordered_json row;
        row["k"] = k;
        row["miss_rate"] =
            static_cast<double>(stats.per_k_misses[k]) / static_cast<double>(stats.samples);
        row["exact"] = twobase::exact_prob_not_generated(n, static_cast<long long>(k)).to_double();
        row["bound"] = std::pow(0.75, static_cast<double>(k) / 2.0 - 1.0);
        per_k.push_back(std::move(row));
    }
    j["per_k"] = std::move(per_k);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_mc_notgen(const GlobalConfig& cfg, int n, long long k, std::uint64_t samples) {
    auto r = twobase::mc_notgen(n, k, samples, cfg.seed, cfg.counts.threads);
    ordered_json j;
    j["n"] = n;
    j["k"] = k;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["miss_rate"] = r.miss_rate();
    j["stderr"] = r.stderr_rate();
    j["exact"] = twobase::exact_prob_not_generated(n, k).to_double();
    j["bound"] = std::pow(0.75, static_cast<double>(k) / 2.0 - 1.0);
    std::cout << j.dump() << "\n";
    return kExitOk;
}

int cmd_bounds(int n, bool have_n) {
    ordered_json j;
    if (have_n) {
        auto e = twobase::eval_bound(n);
        j["n"] = e.n;
        j["t_squared_num"] = e.t_squared.num().str();
        j["t_squared_den"] = e.t_squared.den().str();
        j["le_tenth"] = e.le_tenth;
        j["decay_ok"] = e.decay_ok;
    } else {
        auto r = twobase::find_n0();
        j["n0"] = r.n0;
        j["first_decay_n"] = r.first_decay_n;
    }
    std::cout << j.dump() << "\n";
    return kExitOk;
}

// ---- verify subcommands ----------------------------------------------------

struct VerifyTally {
    long long passed = 0;
    long long failed = 0;
    long long skipped = 0;

    void item(const std::string& label, bool ok) {
        std::cout << (ok ? "pass  " : "FAIL  ") << label << "\n";
        ++(ok ? passed : failed);
    }
    void skip(const std::string& label, const std::string& why) {
        std::cout << "skip  " << label << " (" << why << ")\n";
        ++skipped;
    }
    int finish() const {
        std::cout << "summary: " << passed << " passed, " << failed << " failed, " << skipped
                  << " skipped\n";
        return failed == 0 ? kExitOk : kExitVerifyFailed;
    }
};

int verify_recurrence(const GlobalConfig& cfg, int max_n) {
    VerifyTally tally;
    int reach = std::min(max_n, cfg.counts.dfs_ceiling - 1);
    auto rows = twobase::growth_table(reach + 1, cfg.counts);
    for (int n = 0; n <= reach; ++n) {
        bool ok = rows[n + 1].gamma == rows[n].gamma + rows[n].gamma_next_covered;
        tally.item("recurrence at n=" + std::to_string(n), ok);
    }
    for (int n = reach + 1; n <= max_n; ++n)
        tally.skip("recurrence at n=" + std::to_string(n), "beyond dfs ceiling");
    return tally.finish();
}

int verify_lemma_notgen(int n) {
    VerifyTally tally;
    for (const auto& row : twobase::check_lemma_notgen(n))
        tally.item("P[" + std::to_string(row.k) + " not generated] <= (3/4)^(k/2-1), n=" +
                       std::to_string(n),
                   row.ok);
    return tally.finish();
}

int verify_lemma_expected(int max_n) {
    VerifyTally tally;
    long long first_bad = twobase::expected_uncovered_scan(max_n, BigRational(10));
    tally.item("expected uncovered <= 10 for all n <= " + std::to_string(max_n), first_bad < 0);
    tally.item("expected uncovered <= 8/(6-3*sqrt(3)) at n = " + std::to_string(max_n),
               twobase::expected_uncovered_below_geometric_limit(max_n));
    return tally.finish();
}

int verify_gamma_prime(const GlobalConfig& cfg, int max_n, int threshold, std::uint64_t mc_samples) {
    VerifyTally tally;
    for (int n = 0; n <= max_n; ++n) {
        std::string label = "gamma_prime(" + std::to_string(n) + ", " + std::to_string(threshold) +
                            ") >= 2^" + std::to_string(n);
        if (n <= cfg.counts.brute_ceiling || cfg.counts.force) {
            if (n > 30) {
                tally.skip(label, "beyond exhaustive engine cap 30");
                continue;
            }
            BigInt count = twobase::gamma_prime_count(n, threshold, cfg.counts);
            tally.item(label, count >= BigInt::power_of_two(n));
        } else if (mc_samples > 0) {
            auto est = twobase::gamma_prime_mc(n, threshold, mc_samples, cfg.seed,
                                               cfg.counts.threads);
            // estimated fraction must place the count above 2^n / 2^(n+1) = 1/2
            bool ok = est.fraction + 4.0 * est.stderr_fraction >= 0.5;
            tally.item(label + " (mc estimate)", ok);
        } else {
            tally.skip(label, "beyond brute ceiling; pass --mc-samples for an estimate");
        }
    }
    return tally.finish();
}

int verify_delta_bound_cmd(const GlobalConfig& cfg, int max_n) {
    VerifyTally tally;
    int reach = std::min(max_n, cfg.counts.dfs_ceiling);
    auto rows = twobase::growth_table(reach, cfg.counts);
    for (const auto& row : rows) {
        bool ok = twobase::verify_delta_bound(row.n, row.gamma, row.gamma_next_covered);
        tally.item("1 - delta(n) <= t(n) and missing-count bound at n=" + std::to_string(row.n),
                   ok);
    }
    for (int n = reach + 1; n <= max_n; ++n)
        tally.skip("delta bound at n=" + std::to_string(n), "beyond dfs ceiling");
    return tally.finish();
}

int verify_chain(const GlobalConfig& cfg, int max_n, int base_n) {
    VerifyTally tally;
    int reach = std::min(max_n, cfg.counts.dfs_ceiling);
    auto rows = twobase::growth_table(reach, cfg.counts);
    auto report = twobase::verify_product_chain(rows, base_n);
    tally.item("product chain from base n=" + std::to_string(base_n) + " to n=" +
                   std::to_string(reach),
               report.ok);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i + 1].ratio > rows[i].ratio) monotone = false;
    tally.item("ratio gamma/2^(n+1) non-increasing", monotone);
    tally.item("ratio positive at n=" + std::to_string(reach),
               report.min_ratio > BigRational(0));
    std::cout << "min ratio: " << report.min_ratio.str() << " ~ "
              << report.min_ratio.to_double() << "\n";
    return tally.finish();
}

int verify_bounds(long long window) {
    VerifyTally tally;
    auto r = twobase::find_n0();
    std::cout << "n0 = " << r.n0 << ", first decay n = " << r.first_decay_n << "\n";
    tally.item("n0 exists and is minimal (boundary flips checked)",
               twobase::eval_bound(static_cast<int>(r.n0)).le_tenth &&
                   !twobase::eval_bound(static_cast<int>(r.n0 - 1)).le_tenth &&
                   twobase::eval_bound(static_cast<int>(r.first_decay_n)).decay_ok &&
                   !twobase::eval_bound(static_cast<int>(r.first_decay_n - 1)).decay_ok);
    tally.item("t <= 1/10 and geometric decay on [n0, n0+" + std::to_string(window) + "]",
               twobase::bound_window_holds(r.n0, window));
    tally.item("squared step ratio strictly decreasing on [0, n0+" + std::to_string(window) + "]",
               twobase::t_ratio_strictly_decreasing(0, static_cast<int>(r.n0 + window)));
    return tally.finish();
}

int cmd_oeis_check(const GlobalConfig& cfg, const std::string& bfile, int max_n, double budget_s) {
    auto parsed = twobase::parse_bfile(bfile);
    if (parsed.offset_warning)
        std::cout << "warning: first index is not 0; aligning by index value\n";
    auto report = twobase::oeis_check(parsed, max_n, budget_s, cfg.counts);
    for (const auto& row : report.rows) {
        switch (row.outcome) {
            case twobase::OeisOutcome::match:
                std::cout << "match     n=" << row.index << " gamma=" << row.local.str() << "\n";
                break;
            case twobase::OeisOutcome::mismatch:
                std::cout << "MISMATCH  n=" << row.index << " local=" << row.local.str()
                          << " bfile=" << row.expected.str() << "\n";
                break;
            case twobase::OeisOutcome::skipped:
                std::cout << "skip      n=" << row.index << " (" << row.note << ")\n";
                break;
        }
    }
    std::cout << "summary: " << report.matched << " matched, " << report.mismatched
              << " mismatched, " << report.skipped << " skipped\n";
    return report.ok ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"additive 2-base counting and bound verification"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    app.add_option("--brute-ceiling", cfg.counts.brute_ceiling, "max n for exhaustive iteration")
        ->envname("TWOBASE_BRUTE_CEILING");
    app.add_option("--enum-ceiling", cfg.counts.enum_ceiling, "max n for enumeration")
        ->envname("TWOBASE_ENUM_CEILING");
    app.add_option("--dfs-ceiling", cfg.counts.dfs_ceiling, "max n for the dfs counter")
        ->envname("TWOBASE_DFS_CEILING");
    app.add_option("--threads", cfg.counts.threads, "worker threads (0 = auto)")
        ->envname("TWOBASE_THREADS");
    app.add_option("--cache", cfg.cache_path, "append-only JSON-lines results cache")
        ->envname("TWOBASE_CACHE");
    app.add_option("--seed", cfg.seed, "default Monte Carlo seed")->envname("TWOBASE_SEED");
    app.add_flag("--force", cfg.counts.force, "lift the configurable ceilings");

    // count
    auto* count = app.add_subcommand("count", "count the 2-bases for one n");
    int count_n = 0;
    std::string count_method = "auto";
    int partition_depth = 8;
    count->add_option("--n", count_n, "universe bound")->required();
    count->add_option("--method", count_method, "auto|brute|dfs")
        ->check(CLI::IsMember({"auto", "brute", "dfs"}));
    count->add_option("--partition-depth", partition_depth, "dfs search-space split depth");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list every 2-base for one n");
    int enum_n = 0;
    enumerate->add_option("--n", enum_n, "universe bound")->required();

    // table
    auto* table = app.add_subcommand("table", "growth table as CSV");
    int table_max_n = 20;
    std::string table_out = "-";
    table->add_option("--max-n", table_max_n, "last row")->required();
    table->add_option("--out", table_out, "output path, - for stdout");

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimates with exact references");
    mc->require_subcommand(1);
    auto* mc_uncov = mc->add_subcommand("uncovered", "mean number of uncovered targets");
    int mc_n = 0;
    std::uint64_t mc_samples = 100000;
    mc_uncov->add_option("--n", mc_n, "universe bound")->required();
    mc_uncov->add_option("--samples", mc_samples, "sample count");
    auto* mc_ng = mc->add_subcommand("notgen", "miss rate of one target k");
    int ng_n = 0;
    long long ng_k = 0;
    std::uint64_t ng_samples = 100000;
    mc_ng->add_option("--n", ng_n, "universe bound")->required();
    mc_ng->add_option("--k", ng_k, "target in [0, n+1]")->required();
    mc_ng->add_option("--samples", ng_samples, "sample count");

    // verify
    auto* verify = app.add_subcommand("verify", "run one verification suite");
    verify->require_subcommand(1);
    auto* v_rec = verify->add_subcommand("recurrence", "counting recurrence");
    int v_rec_max = 16;
    v_rec->add_option("--max-n", v_rec_max, "check n = 0..max-n");
    auto* v_ng = verify->add_subcommand("lemma-notgen", "per-target probability bound");
    int v_ng_n = 200;
    v_ng->add_option("--n", v_ng_n, "universe bound (checks all k in [0, n+1])");
    auto* v_exp = verify->add_subcommand("lemma-expected", "expected uncovered targets <= 10");
    int v_exp_max = 10000;
    v_exp->add_option("--max-n", v_exp_max, "scan n = 0..max-n");
    auto* v_gp = verify->add_subcommand("gamma-prime", "threshold family is at least 2^n");
    int v_gp_max = 20;
    int v_gp_threshold = 20;
    std::uint64_t v_gp_mc = 0;
    v_gp->add_option("--max-n", v_gp_max, "check n = 0..max-n");
    v_gp->add_option("--threshold", v_gp_threshold, "uncovered-target threshold");
    v_gp->add_option("--mc-samples", v_gp_mc, "estimate above the brute ceiling");
    auto* v_db = verify->add_subcommand("delta-bound", "1 - delta(n) <= t(n)");
    int v_db_max = 16;
    v_db->add_option("--max-n", v_db_max, "check n = 0..max-n");
    auto* v_chain = verify->add_subcommand("chain", "telescoping product identity");
    int v_chain_max = 16;
    int v_chain_base = 0;
    v_chain->add_option("--max-n", v_chain_max, "last n");
    v_chain->add_option("--base-n", v_chain_base, "base point of the product");
    auto* v_bounds = verify->add_subcommand("bounds", "n0 thresholds and decay window");
    long long v_bounds_window = 10000;
    v_bounds->add_option("--window", v_bounds_window, "window length above n0");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "threshold scan or one evaluation, as JSON");
    int bounds_n = 0;
    auto* bounds_n_opt = bounds->add_option("--n", bounds_n, "evaluate t(n)^2 and flags at n");

    // oeis-check
    auto* oeis = app.add_subcommand("oeis-check", "compare local counts against an OEIS b-file");
    std::string oeis_bfile;
    int oeis_max_n = -1;
    double oeis_budget = 0.0;
    oeis->add_option("--bfile", oeis_bfile, "path to the b-file")->required();
    oeis->add_option("--max-n", oeis_max_n, "largest index to check (default: dfs ceiling)");
    oeis->add_option("--budget-s", oeis_budget, "stop counting after this many seconds");

    // allow global options (--seed, --threads, ...) after a subcommand name
    for (CLI::App* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // 0 for --help
        return code == 0 ? kExitOk : kExitInternal;
    }

    try {
        if (count->parsed()) return cmd_count(cfg, count_n, count_method, partition_depth);
        if (enumerate->parsed()) return cmd_enumerate(cfg, enum_n);
        if (table->parsed()) return cmd_table(cfg, table_max_n, table_out);
        if (mc->parsed()) {
            if (mc_uncov->parsed()) return cmd_mc_uncovered(cfg, mc_n, mc_samples);
            if (mc_ng->parsed()) return cmd_mc_notgen(cfg, ng_n, ng_k, ng_samples);
        }
        if (verify->parsed()) {
            if (v_rec->parsed()) return verify_recurrence(cfg, v_rec_max);
            if (v_ng->parsed()) return verify_lemma_notgen(v_ng_n);
            if (v_exp->parsed()) return verify_lemma_expected(v_exp_max);
            if (v_gp->parsed()) return verify_gamma_prime(cfg, v_gp_max, v_gp_threshold, v_gp_mc);
            if (v_db->parsed()) return verify_delta_bound_cmd(cfg, v_db_max);
            if (v_chain->parsed()) return verify_chain(cfg, v_chain_max, v_chain_base);
            if (v_bounds->parsed()) return verify_bounds(v_bounds_window);
        }
        if (bounds->parsed()) return cmd_bounds(bounds_n, bounds_n_opt->count() > 0);
        if (oeis->parsed())
            return cmd_oeis_check(cfg, oeis_bfile,
                                  oeis_max_n >= 0 ? oeis_max_n : cfg.counts.dfs_ceiling,
                                  oeis_budget);
        std::cerr << "no subcommand\n";
        return kExitInternal;
    } catch (const twobase::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case twobase::ErrorKind::LimitExceeded: return kExitLimit;
            case twobase::ErrorKind::ParseError: return kExitParse;
            default: return kExitInternal;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
