#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "encap/experiments.hpp"
#include "encap/ingest.hpp"
#include "encap/metrics.hpp"

namespace encap::cli {

// Numbers carry at most four decimals; integral values print bare.
inline std::string format_real(Real v) {
    if (!std::isfinite(v)) return "nan";
    if (std::abs(v) < 9e15) {
        const long long rounded = std::llround(v);
        if (std::abs(v - static_cast<Real>(rounded)) < 1e-9) return std::to_string(rounded);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string text = buf;
    while (!text.empty() && text.back() == '0') text.pop_back();
    if (!text.empty() && text.back() == '.') text.pop_back();
    return text;
}

inline std::string format_count(Count v) { return std::to_string(v); }

struct Table {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;

    void row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

namespace detail {

inline std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

inline bool numeric_cell(const std::string& cell) {
    if (cell.empty()) return false;
    return cell.find_first_not_of("0123456789.-") == std::string::npos;
}

}  // namespace detail

inline void emit(const Table& table, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        for (std::size_t i = 0; i < table.headers.size(); ++i) {
            if (i) out << ',';
            out << detail::csv_field(table.headers[i]);
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << ',';
                out << detail::csv_field(row[i]);
            }
            out << '\n';
        }
        return;
    }
    std::vector<std::size_t> widths(table.headers.size(), 0);
    for (std::size_t i = 0; i < table.headers.size(); ++i) {
        widths[i] = table.headers[i].size();
    }
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
            widths[i] = std::max(widths[i], row[i].size());
        }
    }
    const auto pad = [&](const std::string& cell, std::size_t i, bool right) {
        const std::size_t fill = widths[i] > cell.size() ? widths[i] - cell.size() : 0;
        return right ? std::string(fill, ' ') + cell : cell + std::string(fill, ' ');
    };
    for (std::size_t i = 0; i < table.headers.size(); ++i) {
        if (i) out << "  ";
        out << pad(table.headers[i], i, false);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << pad(row[i], i, detail::numeric_cell(row[i]));
        }
        out << '\n';
    }
}

namespace detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Context context_from(const std::string& name) {
    if (name == "unencapsulated") return Context::unencapsulated;
    if (name == "flat") return Context::flat;
    if (name == "layered") return Context::layered;
    if (name == "hier2d") return Context::hier2d;
    throw validation_error("unknown context '" + name + "'");
}

inline Table series_table(const Series& series, const std::string& xlabel,
                          const std::string& ylabel) {
    Table table;
    table.headers = {xlabel, ylabel};
    for (const auto& [x, y] : series.points) {
        table.row({format_real(x), format_real(y)});
    }
    return table;
}

// Zips growth-style series that share an x grid.
inline Table zip_table(const std::string& xlabel, const std::vector<std::string>& ylabels,
                       const std::vector<Series>& series) {
    Table table;
    table.headers.push_back(xlabel);
    for (const auto& label : ylabels) table.headers.push_back(label);
    const std::size_t rows = series.empty() ? 0 : series.front().points.size();
    for (std::size_t i = 0; i < rows; ++i) {
        std::vector<std::string> cells{format_real(series.front().points[i].first)};
        for (const auto& s : series) cells.push_back(format_real(s.points[i].second));
        table.row(std::move(cells));
    }
    return table;
}

struct AnalyzeResult {
    Table table;
    std::vector<std::string> notes;
};

inline Table metrics_table(const FlatSystem& flat, Count psc, bool flat_context) {
    MetricsReport rep = configuration_efficiency(flat);
    Table table;
    table.headers = {"nodes",      "regions", "psc",   "s_min", "s_max",
                     "c_e",        "ihv_percent", "r_min", "amc"};
    std::string ce = "-";
    std::string smin = "-";
    std::string rmin = "-";
    std::string ihv = "-";
    if (rep.defined) {
        const Real span = static_cast<Real>(rep.s_max) - rep.s_min;
        const Real raw = (static_cast<Real>(psc) - rep.s_min) / span;
        const Real ci = std::clamp(raw, 0.0, 1.0);
        ce = format_real(1.0 - ci);
        smin = format_real(rep.s_min);
        rmin = format_real(rep.r_min);
        ihv = format_real(rep.ihv_percent);
    } else if (rep.n >= 1) {
        ihv = format_real(::encap::ihv_percent(rep.n, rep.h));
    }
    std::string amc = "-";
    if (flat_context) {
        const AmcVerdict verdict = amc_check(flat);
        if (verdict.comparable) amc = verdict.is_amc ? "yes" : "no";
    }
    table.row({format_count(flat.n()), format_count(flat.r()), format_count(psc), smin,
               format_count(flat.n() * (flat.n() - 1)), ce, ihv, rmin, amc});
    return table;
}

inline AnalyzeResult analyze_manifest(const std::string& path) {
    AnalyzeResult result;
    const Manifest manifest = parse_manifest(slurp(path));
    const FlatSystem flat = manifest.to_flat();
    Count psc = 0;
    switch (manifest.context) {
        case Manifest::Context::flat:
            psc = system_psc(flat).total;
            break;
        case Manifest::Context::layered:
            psc = layered_psc_enumerated(manifest.to_layered());
            result.notes.push_back("layered manifest: psc from the layered visibility rule");
            break;
        case Manifest::Context::hier:
            psc = hier_psc_enumerated(manifest.to_hier());
            result.notes.push_back("hier manifest: psc from the hierarchy visibility rule");
            break;
    }
    result.table = metrics_table(flat, psc, manifest.context == Manifest::Context::flat);
    return result;
}

inline AnalyzeResult analyze_scan(const std::string& dir, const std::string& graph) {
    AnalyzeResult result;
    const ScanReport report = graph == "second" ? function_graph_scan(dir) : scan_java_tree(dir);
    for (const auto& warning : report.warnings) result.notes.push_back("warning: " + warning);
    result.notes.push_back("note: lexical scan of " + std::to_string(report.files_scanned) +
                           " file(s); visibility is approximated from declarations");
    const FlatSystem flat = report.codebase.collapse();
    result.table = metrics_table(flat, flat.regions.empty() ? 0 : system_psc(flat).total, true);
    return result;
}

struct FigureScale {
    bool paper = false;
};

inline Table figure_table(int id, const FigureScale& scale, std::uint64_t seed, int jobs) {
    switch (id) {
        case 3:
            return series_table(system_growth(100, 1, Context::unencapsulated), "n", "psc");
        case 15:
            return series_table(varied_region_sweep(12, 1, Context::flat), "regions", "psc");
        case 16: {
            const auto un = system_growth(100, 1, Context::unencapsulated);
            const auto flat = system_growth(100, 1, Context::flat);
            return zip_table("n", {"unencapsulated", "flat"}, {un, flat});
        }
        case 17:
            return series_table(varied_region_sweep(100, 1, Context::flat), "regions", "psc");
        case 18: {
            Table table;
            table.headers = {"regions", "violations", "psc"};
            for (Count p = 1; p <= 4; ++p) {
                const auto series = varied_region_sweep(100, p, Context::flat);
                for (const auto& [x, y] : series.points) {
                    table.row({format_real(x), format_count(p), format_real(y)});
                }
            }
            return table;
        }
        case 19: {
            RandomSystemParams params;
            params.n = 100;
            params.system_count = scale.paper ? 1000 : 200;
            params.seed = seed;
            params.jobs = jobs;
            const auto systems = random_systems(params);
            Table table;
            table.headers = {"system", "regions", "psc"};
            Count index = 0;
            for (const auto& [sys, rep] : systems) {
                table.row({format_count(++index), format_count(sys.r()),
                           format_count(system_psc(sys).total)});
            }
            return table;
        }
        case 20:
        case 21: {
            const Count samples = scale.paper ? 200000 : 20000;
            Table table;
            table.headers = {"regions", id == 20 ? "amc_fraction" : "min_gap_percent"};
            for (Count r = 2; r <= 5; ++r) {
                const CensusResult census =
                    r == 2 ? amc_census(100, 2, CensusMode::exhaustive, seed, samples, jobs)
                           : amc_census(100, r, CensusMode::sampled, seed, samples, jobs);
                table.row({format_count(r), format_real(id == 20 ? census.amc_fraction
                                                                 : census.min_gap_percent)});
            }
            return table;
        }
        case 22: {
            const std::vector<Count> ns = scale.paper
                                              ? std::vector<Count>{10, 20, 50, 100, 200, 500, 1000}
                                              : std::vector<Count>{10, 20, 50, 100, 200};
            const Count samples = scale.paper ? 1000 : 200;
            return series_table(average_efficiency_curve(ns, samples, seed, jobs), "n", "mean_ce");
        }
        case 23: {
            const Count steps = scale.paper ? 5000 : 1000;
            const auto runs = adhoc_evolution(belt_demo_systems(seed), steps, seed);
            Table table;
            table.headers = {"system", "step", "ce"};
            for (std::size_t which = 0; which < runs.size(); ++which) {
                for (const auto& [step, ce] : runs[which].points) {
                    table.row({format_count(static_cast<Count>(which + 1)), format_real(step),
                               format_real(ce)});
                }
            }
            return table;
        }
        case 24:
            return series_table(capped_growth_curve(2000, 10, 1), "n", "ce");
        case 27:
            return series_table(layered_split_sweep(12, 3, 4, 1), "placement", "psc");
        case 28:
            return series_table(varied_region_sweep(100, 1, Context::layered), "layers", "psc");
        case 29:
            return series_table(system_growth(100, 1, Context::layered), "n", "psc");
        case 34:
            return series_table(varied_region_sweep(100, 1, Context::hier2d), "regions", "psc");
        case 35: {
            const Count max = scale.paper ? 100 : 60;
            const auto hier = system_growth(max, 1, Context::hier2d);
            const auto layered = system_growth(max, 1, Context::layered);
            const auto flat = system_growth(max, 1, Context::flat);
            const auto un = system_growth(max, 1, Context::unencapsulated);
            return zip_table("n", {"hier2d", "layered", "flat", "unencapsulated"},
                             {hier, layered, flat, un});
        }
        default:
            throw validation_error("unknown figure id " + std::to_string(id) +
                                   "; known: 3 15 16 17 18 19 20 21 22 23 24 27 28 29 34 35");
    }
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"potential structural complexity of encapsulated graphs"};
    app.require_subcommand(1);

    std::string format = "table";
    std::uint64_t seed = 0;
    int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"table", "csv"}));
        cmd->add_option("--seed", seed, "random seed")->envname("ENCAP_SEED");
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 512));
    };

    auto* analyze = app.add_subcommand("analyze", "metrics for a manifest or a source tree");
    std::string input_path, scan_dir, graph = "third";
    analyze->add_option("--input", input_path, "manifest file");
    analyze->add_option("--scan-java", scan_dir, "directory of .java sources");
    analyze->add_option("--graph", graph, "scan granularity")
        ->check(CLI::IsMember({"second", "third"}));
    add_common(analyze);

    auto* laws = app.add_subcommand("laws", "closed-form quantities for a uniform system");
    Count laws_n = 0;
    Real laws_p = 1;
    laws->add_option("--nodes", laws_n, "system size")->required();
    laws->add_option("--violations", laws_p, "violations per region");
    add_common(laws);

    auto* figure = app.add_subcommand("figure", "reproduce a dataset");
    int figure_id = 0;
    std::string scale = "small";
    figure->add_option("id", figure_id, "figure number")->required();
    figure->add_option("--scale", scale, "dataset size")
        ->check(CLI::IsMember({"small", "paper"}));
    add_common(figure);

    auto* sweep = app.add_subcommand("sweep", "fixed-size or varied-region sweeps");
    std::string sweep_kind = "varied", sweep_context = "flat";
    Count sweep_n = 12, sweep_r = 2, sweep_p = 1;
    sweep->add_option("--kind", sweep_kind)->check(CLI::IsMember({"fixed", "varied"}));
    sweep->add_option("--context", sweep_context)
        ->check(CLI::IsMember({"flat", "layered", "hier2d"}));
    sweep->add_option("--nodes", sweep_n, "system size");
    sweep->add_option("--regions", sweep_r, "regions for the fixed sweep");
    sweep->add_option("--violations", sweep_p, "violations per region");
    add_common(sweep);

    auto* growth = app.add_subcommand("growth", "minimum value while the system grows");
    std::string growth_context = "flat";
    Count growth_max = 100, growth_p = 1;
    growth->add_option("--context", growth_context)
        ->check(CLI::IsMember({"unencapsulated", "flat", "layered", "hier2d"}));
    growth->add_option("--max", growth_max, "largest system size");
    growth->add_option("--violations", growth_p, "violations per region");
    add_common(growth);

    auto* random = app.add_subcommand("random", "sample random systems");
    Count random_n = 100, random_count = 1000;
    random->add_option("--nodes", random_n, "system size");
    random->add_option("--count", random_count, "how many systems");
    add_common(random);

    auto* evolve = app.add_subcommand("evolve", "ad hoc update stream");
    std::string evolve_input;
    Count evolve_steps = 5000;
    evolve->add_option("--input", evolve_input, "flat manifest to start from");
    evolve->add_option("--steps", evolve_steps, "update count");
    add_common(evolve);

    auto* amc = app.add_subcommand("amc", "census of anomalous configurations");
    Count amc_n = 100, amc_r = 2, amc_samples = 200000;
    bool amc_exhaustive = false;
    amc->add_option("--nodes", amc_n, "system size");
    amc->add_option("--regions", amc_r, "regions");
    amc->add_flag("--exhaustive", amc_exhaustive, "walk the whole space (r = 2 only)");
    amc->add_option("--samples", amc_samples, "sample count");
    add_common(amc);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Table table;
        if (*analyze) {
            if (input_path.empty() == scan_dir.empty()) {
                err << "error: analyze needs exactly one of --input or --scan-java\n";
                return 1;
            }
            const auto result = input_path.empty() ? detail::analyze_scan(scan_dir, graph)
                                                   : detail::analyze_manifest(input_path);
            for (const auto& note : result.notes) err << note << '\n';
            table = result.table;
        } else if (*laws) {
            table.headers = {"quantity", "value"};
            table.row({"s_max", format_count(psc_unencapsulated(laws_n))});
            table.row({"s_min", format_real(s_min(laws_n, laws_p))});
            table.row({"r_min", format_real(r_min(laws_n, laws_p))});
            table.row({"recommended_regions", format_count(recommended_regions(laws_n, laws_p))});
            table.row({"optimal_region_size", format_real(optimal_region_size(laws_n, laws_p))});
            table.row({"r_h", format_real(r_h(laws_n, laws_p))});
        } else if (*figure) {
            detail::FigureScale fig_scale;
            fig_scale.paper = scale == "paper";
            table = detail::figure_table(figure_id, fig_scale, seed, jobs);
        } else if (*sweep) {
            if (sweep_kind == "fixed") {
                table = detail::series_table(fixed_system_sweep(sweep_n, sweep_r, sweep_p),
                                             "placement", "psc");
            } else {
                const Context ctx = detail::context_from(sweep_context);
                const std::string xlabel = ctx == Context::layered ? "layers" : "regions";
                table = detail::series_table(varied_region_sweep(sweep_n, sweep_p, ctx), xlabel,
                                             "psc");
            }
        } else if (*growth) {
            table = detail::series_table(
                system_growth(growth_max, growth_p, detail::context_from(growth_context)), "n",
                "psc");
        } else if (*random) {
            RandomSystemParams params;
            params.n = random_n;
            params.system_count = random_count;
            params.seed = seed;
            params.jobs = jobs;
            const auto systems = random_systems(params);
            table.headers = {"system", "regions", "psc", "ce"};
            Count index = 0;
            for (const auto& [sys, rep] : systems) {
                table.row({format_count(++index), format_count(sys.r()),
                           format_count(system_psc(sys).total),
                           rep.defined ? format_real(rep.c_e) : "-"});
            }
        } else if (*evolve) {
            std::vector<FlatSystem> initial;
            if (evolve_input.empty()) {
                initial = belt_demo_systems(seed);
            } else {
                const Manifest manifest = parse_manifest(detail::slurp(evolve_input));
                if (manifest.context != Manifest::Context::flat) {
                    err << "error: evolve expects a flat manifest\n";
                    return 1;
                }
                initial.push_back(manifest.to_flat());
            }
            const auto runs = adhoc_evolution(initial, evolve_steps, seed);
            table.headers = {"system", "step", "ce"};
            for (std::size_t which = 0; which < runs.size(); ++which) {
                for (const auto& [step, ce] : runs[which].points) {
                    table.row({format_count(static_cast<Count>(which + 1)), format_real(step),
                               format_real(ce)});
                }
            }
        } else if (*amc) {
            const CensusResult census =
                amc_exhaustive ? amc_census(amc_n, amc_r, CensusMode::exhaustive, seed, amc_samples,
                                            jobs)
                               : amc_census(amc_n, amc_r, CensusMode::sampled, seed, amc_samples,
                                            jobs);
            table.headers = {"regions", "mode",     "space",        "excluded",
                             "amc_count", "amc_fraction", "min_gap_percent"};
            table.row({format_count(amc_r), census.exhaustive ? "exhaustive" : "sampled",
                       format_count(census.space), format_count(census.excluded),
                       format_count(census.amc_count), format_real(census.amc_fraction),
                       format_real(census.min_gap_percent)});
        }
        emit(table, format, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace encap::cli
