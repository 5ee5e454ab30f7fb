#include "twobase/oeis.hpp"

#include "twobase/errors.hpp"

#include <fstream>
#include <sstream>

namespace twobase {

OeisBFile parse_bfile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::Internal, "cannot read b-file " + path.string());

    OeisBFile out;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string idx_tok, val_tok, extra;
        if (!(fields >> idx_tok)) continue; // blank or comment-only line
        if (!(fields >> val_tok) || (fields >> extra))
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected exactly two fields: index value");

        long long index;
        try {
            std::size_t used = 0;
            index = std::stoll(idx_tok, &used);
            if (used != idx_tok.size()) throw std::invalid_argument(idx_tok);
        } catch (const std::exception&) {
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": bad index '" + idx_tok + "'");
        }
        BigInt value;
        try {
            value = BigInt::from_string(val_tok);
        } catch (const Error&) {
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": bad value '" + val_tok + "'");
        }
        if (value < BigInt(1))
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": value must be >= 1");
        if (!out.entries.empty() && index <= out.entries.back().first)
            raise(ErrorKind::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": indices must increase");
        if (out.entries.empty() && index != 0) out.offset_warning = true;
        out.entries.emplace_back(index, std::move(value));
    }
    return out;
}

OeisCheckReport oeis_check(const OeisBFile& bfile, int max_n, double budget_s,
                           const CountOptions& opts) {
    OeisCheckReport report;
    double spent = 0.0;
    bool budget_hit = false;
    for (const auto& [index, expected] : bfile.entries) {
        OeisCheckRow row;
        row.index = index;
        row.expected = expected;
        if (index > max_n) {
            row.outcome = OeisOutcome::skipped;
            row.note = "beyond max n " + std::to_string(max_n);
        } else if (budget_hit) {
            row.outcome = OeisOutcome::skipped;
            row.note = "time budget exhausted";
        } else if (index > opts.dfs_ceiling && !opts.force) {
            row.outcome = OeisOutcome::skipped;
            row.note = "beyond dfs ceiling " + std::to_string(opts.dfs_ceiling);
        } else {
            CountRecord rec = count_dfs(static_cast<int>(index), 8, opts);
            spent += rec.elapsed_s;
            row.local = rec.gamma;
            row.outcome = rec.gamma == expected ? OeisOutcome::match : OeisOutcome::mismatch;
            if (budget_s > 0 && spent > budget_s) budget_hit = true;
        }
        switch (row.outcome) {
            case OeisOutcome::match: ++report.matched; break;
            case OeisOutcome::mismatch: ++report.mismatched; break;
            case OeisOutcome::skipped: ++report.skipped; break;
        }
        report.rows.push_back(std::move(row));
    }
    report.ok = report.mismatched == 0;
    return report;
}

} // namespace twobase
