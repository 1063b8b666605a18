#pragma once

// Command-line front end. run_command takes the arguments after the program
// name and returns the process exit code:
//   0 ok, 2 usage or invalid input, 3 unsupported denominator,
//   4 budget exhausted or indeterminate result (the result is still printed).

#include "takagi/render.hpp"
#include "takagi/signed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace takagi::cli {

using json = nlohmann::ordered_json;

enum exit_code : int { ok = 0, usage = 2, unsupported = 3, budget = 4 };

namespace detail {

inline std::vector<Rational> parse_list(const std::string& text)
{
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        if (comma > start) {
            out.push_back(parse_rational(std::string_view(text).substr(start, comma - start)));
        }
        start = comma + 1;
    }
    return out;
}

inline json passages_json(const PassageTimes& p)
{
    json head = json::array();
    for (const auto& t : p.head()) {
        if (t) {
            head.push_back(*t);
        } else {
            head.push_back(nullptr);
        }
    }
    json j;
    j["head"] = head;
    if (p.infinite_tail()) {
        j["tail"] = "infinite";
    } else {
        j["tail"] = json{{"levels", p.block_levels()}, {"shift", p.block_shift()}};
    }
    return j;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw error("cannot open '" + path + "' for writing");
    }
    f << text;
}

} // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact computations with the Takagi function", "takagi"};
    app.require_subcommand(1);

    std::string x_text;
    std::string y_text;
    std::size_t max_order = 6;
    std::size_t terms = 100;
    std::size_t depth = 4;
    std::size_t plot_bits = 10;
    std::size_t max_states = Budget{}.max_states;
    std::optional<std::size_t> approx_depth;
    std::string signs;
    std::string preperiod;
    std::string format = "json";
    std::string out_path;
    std::string highlight;
    std::string filter = "all";
    std::string which = "catalan";
    std::string action;

    auto* eval = app.add_subcommand("eval", "T(x) for rational x in [0,1]");
    eval->add_option("--x", x_text, "abscissa p/q")->required();
    eval->add_option("--approx-depth", approx_depth, "truncate after N digits and report an error bound");

    auto* classify_cmd = app.add_subcommand("classify", "finite / countable / uncountable verdict for L(y)");
    classify_cmd->add_option("--y", y_text, "ordinate p/q")->required();
    classify_cmd->add_option("--max-states", max_states, "state budget");

    auto* levelset = app.add_subcommand("levelset", "level set report with exact preimages");
    levelset->add_option("--y", y_text, "ordinate p/q")->required();
    levelset->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    levelset->add_option("--max-states", max_states, "state budget");

    auto* census = app.add_subcommand("census", "hump counts by order");
    census->add_option("--max-order", max_order)->required();
    census->add_option("--filter", filter)->check(CLI::IsMember({"all", "leading", "gen1"}));

    auto* series = app.add_subcommand("series", "partial sums of the expectation series");
    series->add_option("--which", which)->check(CLI::IsMember({"catalan", "cardinality", "local"}));
    series->add_option("--terms", terms)->required();

    auto* grid = app.add_subcommand("grid", "classify every ordinate j/(3*4^n)");
    grid->add_option("--depth", depth)->required();
    grid->add_option("--out", out_path, "CSV destination (stdout when omitted)");
    grid->add_option("--max-states", max_states, "state budget per ordinate");

    auto* signed_cmd = app.add_subcommand("signed", "signed Takagi functions");
    signed_cmd->add_option("action", action)->required()->check(CLI::IsMember({"eval", "extrema", "localcount"}));
    signed_cmd->add_option("--signs", signs, "period of the sign sequence, e.g. ++-")->required();
    signed_cmd->add_option("--preperiod", preperiod, "preperiod of the sign sequence");
    signed_cmd->add_option("--x", x_text);
    signed_cmd->add_option("--y", y_text);
    signed_cmd->add_option("--max-order", max_order);

    auto* plot = app.add_subcommand("plot", "SVG of the graph with hump rectangles");
    plot->add_option("--highlight", highlight, "comma separated balanced dyadics");
    plot->add_option("--depth", plot_bits, "log2 of the samples per unit");
    plot->add_option("--out", out_path, "SVG destination (stdout when omitted)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    const Budget bud{max_states, Budget{}.max_abs_slope};
    try {
        if (eval->parsed()) {
            const Rational x = parse_rational(x_text);
            json j;
            j["x"] = to_fraction(x);
            if (approx_depth) {
                const Approximation a = eval_approx(to_binary(x), *approx_depth);
                j["T"] = to_fraction(a.value);
                j["method"] = "approx";
                j["error_bound"] = to_fraction(a.error_bound);
            } else {
                j["T"] = to_fraction(eval_rational(x));
                j["method"] = is_dyadic(x) ? "dyadic" : "periodic";
            }
            out << j.dump(2) << '\n';
            return ok;
        }

        if (classify_cmd->parsed() || levelset->parsed()) {
            const LevelSetReport r = classify(parse_exact(y_text), bud);
            const bool finite = r.verdict == Verdict::finite;
            if (classify_cmd->parsed()) {
                json j;
                j["y"] = to_fraction(r.ordinate.value());
                j["verdict"] = to_string(r.verdict);
                if (finite) {
                    j["count"] = r.cardinality;
                    json pre = json::array();
                    for (const auto& p : r.preimages) {
                        pre.push_back(to_fraction(p));
                    }
                    j["preimages"] = pre;
                } else {
                    j["witness"] = r.witness;
                }
                j["states_explored"] = r.states_explored;
                out << j.dump(2) << '\n';
            } else if (format == "csv") {
                out << "y,verdict,cardinality,n_local,preimage\n";
                const std::string head = to_fraction(r.ordinate.value()) + "," + to_string(r.verdict) + ","
                                         + std::to_string(r.cardinality) + "," + std::to_string(r.n_local) + ",";
                if (r.preimages.empty()) {
                    out << head << '\n';
                }
                for (const auto& p : r.preimages) {
                    out << head << to_fraction(p) << '\n';
                }
            } else {
                json j;
                j["y"] = to_fraction(r.ordinate.value());
                j["verdict"] = to_string(r.verdict);
                j["cardinality"] = r.cardinality;
                json pre = json::array();
                for (const auto& p : r.preimages) {
                    pre.push_back(to_fraction(p));
                }
                j["preimages"] = pre;
                j["n_local"] = r.n_local;
                j["witness"] = r.witness;
                out << j.dump(2) << '\n';
            }
            return r.verdict == Verdict::indeterminate ? budget : ok;
        }

        if (census->parsed()) {
            out << "m,count,expected,match\n";
            for (std::size_t m = 1; m <= max_order; ++m) {
                HumpFilter f = HumpFilter::all();
                Integer expected = binom_central(m);
                if (filter == "leading") {
                    f = HumpFilter::leading_only();
                    expected = catalan(m);
                } else if (filter == "gen1") {
                    f = HumpFilter::of_generation(1);
                    expected = 2 * catalan(m - 1);
                }
                const std::size_t count = enumerate_balanced(m, f).size();
                out << m << ',' << count << ',' << expected.get_str() << ','
                    << (Integer(static_cast<unsigned long>(count)) == expected ? "true" : "false") << '\n';
            }
            return ok;
        }

        if (series->parsed()) {
            json j;
            j["which"] = which;
            j["terms"] = terms;
            std::optional<Rational> exact;
            if (which == "catalan") {
                j["value"] = catalan_series_partial(terms);
                if (terms <= exact_series_limit) {
                    exact = catalan_series_exact(terms);
                }
            } else if (which == "cardinality") {
                j["value"] = expected_cardinality_series_partial(terms);
                if (terms <= exact_series_limit) {
                    exact = Rational(3, 2) * central_series_exact(terms);
                }
            } else {
                j["value"] = expected_local_series_partial(terms);
                if (terms <= exact_series_limit) {
                    exact = expected_local_series_exact(terms);
                }
            }
            if (exact) {
                j["exact"] = to_fraction(*exact);
            }
            out << j.dump(2) << '\n';
            return ok;
        }

        if (grid->parsed()) {
            const GridReport rep = grid_experiment(depth, bud);
            std::ostringstream csv;
            csv << "j,y,verdict,cardinality,n_local,states\n";
            for (const auto& row : rep.rows) {
                csv << row.j << ',' << to_fraction(row.y.value()) << ',' << to_string(row.verdict) << ','
                    << row.cardinality << ',' << row.n_local << ',' << row.states << '\n';
            }
            detail::write_text(out_path, csv.str(), out);
            if (!out_path.empty()) {
                json j;
                j["depth"] = rep.depth;
                j["ordinates"] = rep.ordinates;
                j["finite"] = rep.verdicts.finite;
                j["countably_infinite"] = rep.verdicts.countable;
                j["uncountable"] = rep.verdicts.uncountable;
                j["indeterminate"] = rep.verdicts.indeterminate;
                j["fraction_cardinality_two"] = rep.fraction_cardinality_two;
                j["mean_n_local"] = rep.mean_n_local;
                json hist = json::object();
                for (const auto& [card, count] : rep.histogram) {
                    hist[std::to_string(card)] = count;
                }
                j["histogram"] = hist;
                out << j.dump(2) << '\n';
            }
            return rep.verdicts.indeterminate > 0 ? budget : ok;
        }

        if (signed_cmd->parsed()) {
            const SignSequence r = SignSequence::parse(signs, preperiod);
            json j;
            j["signs"] = r.to_string();
            if (action == "eval") {
                if (x_text.empty()) {
                    throw error("signed eval needs --x");
                }
                const Rational x = parse_rational(x_text);
                j["x"] = to_fraction(x);
                j["f"] = to_fraction(eval_signed_rational(x, r));
            } else if (action == "extrema") {
                const SignedExtrema e = extrema(r);
                j["max"] = to_fraction(e.max_value);
                j["min"] = to_fraction(e.min_value);
                j["height"] = to_fraction(e.height());
                j["positive_passages"] = detail::passages_json(e.positive);
                j["negative_passages"] = detail::passages_json(e.negative);
            } else {
                if (y_text.empty()) {
                    throw error("signed localcount needs --y");
                }
                const Rational y = parse_rational(y_text);
                j["y"] = to_fraction(y);
                j["max_order"] = max_order;
                j["count"] = signed_truncated_local_count(y, r, max_order);
            }
            out << j.dump(2) << '\n';
            return ok;
        }

        if (plot->parsed()) {
            PlotSpec spec;
            spec.resolution_bits = plot_bits;
            spec.highlights = detail::parse_list(highlight);
            spec.output_path = out_path;
            detail::write_text(out_path, render_svg(spec), out);
            return ok;
        }
    } catch (const unsupported_denominator& e) {
        err << "takagi: " << e.what() << '\n';
        return unsupported;
    } catch (const budget_exceeded& e) {
        err << "takagi: " << e.what() << '\n';
        return budget;
    } catch (const error& e) {
        err << "takagi: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

} // namespace takagi::cli
