// Command-line front end. Every subcommand is a pure function of its input
// files and flags; outputs are canonically sorted, so identical invocations
// produce identical bytes.
//
// Exit codes: 0 success, 1 validation/lemma failure, 2 parse error,
// 3 resource limit exceeded.

#include "mw/dot.hpp"
#include "mw/io.hpp"
#include "mw/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw mw::ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

mw::BinaryStructure load_structure_or_graph(const std::string& path)
{
    std::string text = slurp(path);
    switch (mw::detect_kind(text)) {
    case mw::FileKind::structure: return mw::parse_structure(text);
    case mw::FileKind::graph: return mw::parse_graph(text).s;
    default: throw mw::ParseError("'" + path + "' is neither a structure nor a graph");
    }
}

mw::RankedMergeModel load_ranked_model(const std::string& path)
{
    auto parsed = mw::parse_merge_model(slurp(path));
    if (!parsed.ranking)
        throw mw::ParseError("'" + path + "' carries no interval ranking");
    return mw::RankedMergeModel{std::move(parsed.model), std::move(*parsed.ranking)};
}

int cmd_validate(const std::string& path, const std::string& companion)
{
    std::string text = slurp(path);
    switch (mw::detect_kind(text)) {
    case mw::FileKind::structure: {
        mw::parse_structure(text);
        std::cout << "structure ok\n";
        return 0;
    }
    case mw::FileKind::graph: {
        mw::parse_graph(text);
        std::cout << "graph ok\n";
        return 0;
    }
    case mw::FileKind::merge_sequence: {
        auto seq = mw::parse_merge_sequence(text);
        if (companion.empty()) {
            std::cout << "merge sequence parsed; pass a structure file to check it fully\n";
            return 0;
        }
        auto g = load_structure_or_graph(companion);
        auto rep = mw::validate_sequence(seq, g);
        std::cout << (rep.ok ? "merge sequence ok" : "invalid: " + rep.detail) << "\n";
        return rep.ok ? 0 : 1;
    }
    case mw::FileKind::merge_model: {
        auto parsed = mw::parse_merge_model(text);
        auto rep = mw::validate_model(parsed.model);
        if (!rep.ok) {
            std::cout << "invalid: " << rep.detail << "\n";
            return 1;
        }
        if (!parsed.ranking) {
            std::cout << "merge-model ok (no ranking)\n";
            return 0;
        }
        mw::RankedMergeModel rm{parsed.model, *parsed.ranking};
        auto rrep = mw::validate_ranking(rm);
        if (!rrep.ok) {
            std::cout << "invalid ranking: " << rrep.detail << "\n";
            return 1;
        }
        std::cout << "merge-model ok; ranking ok; "
                  << (rrep.clean ? "clean" : "not clean: " + rrep.clean_detail) << "\n";
        return 0;
    }
    case mw::FileKind::twin_model: {
        auto t = mw::parse_twin_model(text);
        auto rep = mw::validate_twin_model(t);
        std::cout << (rep.ok ? "twin-model ok" : "invalid: " + rep.detail) << "\n";
        return rep.ok ? 0 : 1;
    }
    case mw::FileKind::clique_expression: {
        auto e = mw::parse_expression_text(text);
        std::cout << "expression ok; " << mw::label_count(e) << " labels; "
                  << (mw::is_linear(e) ? "linear" : "not linear") << "\n";
        return 0;
    }
    }
    return 2;
}

int cmd_dot(const std::string& path, const std::string& out_path)
{
    std::string text = slurp(path);
    std::string dot;
    switch (mw::detect_kind(text)) {
    case mw::FileKind::structure: dot = mw::to_dot(mw::parse_structure(text)); break;
    case mw::FileKind::graph: dot = mw::to_dot(mw::parse_graph(text)); break;
    case mw::FileKind::merge_model: {
        auto parsed = mw::parse_merge_model(text);
        dot = mw::to_dot(parsed.model, parsed.ranking);
        break;
    }
    case mw::FileKind::twin_model: dot = mw::to_dot(mw::parse_twin_model(text)); break;
    case mw::FileKind::clique_expression: dot = mw::to_dot(mw::parse_expression_text(text)); break;
    case mw::FileKind::merge_sequence:
        throw mw::ParseError("no DOT export for merge sequences; convert with seq2model first");
    }
    spit(out_path, dot);
    return 0;
}

int cmd_verify(const mw::TrialConfig& cfg, const std::string& lemma, const std::string& out_dir,
               const std::string& summary_path)
{
    auto reports = mw::run_lemma_suite(cfg, lemma);
    if (reports.empty()) {
        std::cerr << "unknown lemma '" << lemma << "'\n";
        return 1;
    }
    bool any_failure = false;
    nlohmann::json summary;
    summary["seed"] = cfg.seed;
    summary["nmax"] = cfg.nmax;
    summary["trials"] = cfg.trials;
    summary["radii"] = cfg.radii;
    summary["lemmas"] = nlohmann::json::array();
    for (const auto& report : reports) {
        std::cout << "lemma " << report.lemma << ": " << report.trials << " trials, "
                  << report.failures.size() << " failures "
                  << (report.ok() ? "[OK]" : "[FAIL]") << "\n";
        nlohmann::json entry;
        entry["lemma"] = report.lemma;
        entry["trials"] = report.trials;
        entry["failures"] = nlohmann::json::array();
        for (size_t i = 0; i < report.failures.size(); ++i) {
            const auto& failure = report.failures[i];
            std::cerr << "  " << report.lemma << " #" << i << ": " << failure.message << "\n";
            nlohmann::json jf;
            jf["message"] = failure.message;
            jf["files"] = nlohmann::json::array();
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                for (const auto& artifact : failure.artifacts) {
                    std::string path = out_dir + "/" + report.lemma + "-" + std::to_string(i) + "-"
                                       + artifact.filename;
                    spit(path, artifact.content);
                    jf["files"].push_back(path);
                }
            }
            entry["failures"].push_back(jf);
        }
        summary["lemmas"].push_back(entry);
        if (!report.ok()) any_failure = true;
    }
    if (!summary_path.empty()) spit(summary_path, summary.dump(2) + "\n");
    return any_failure ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"merge sequences, merge-models and twin-models toolbox"};
    app.require_subcommand(1);

    std::string in1, in2, out_path, emit_expr, lemma, out_dir, summary_path;
    int radius = 1, nmax = 5, limit = 64, trials = 50;
    std::uint64_t seed = 1;
    std::vector<int> radii{1, 2};

    auto* validate = app.add_subcommand("validate", "check a file against its invariants");
    validate->add_option("file", in1)->required();
    validate->add_option("structure", in2, "structure to check a merge sequence against");

    auto* widthc = app.add_subcommand("width", "radius-r width of a merge sequence");
    widthc->add_option("--r", radius)->required();
    widthc->add_option("sequence", in1)->required();
    widthc->add_option("structure", in2)->required();

    auto* mwc = app.add_subcommand("mw", "exact radius-r merge-width");
    mwc->add_option("--r", radius)->required();
    mwc->add_option("--nmax", nmax);
    mwc->add_option("input", in1)->required();

    auto* seq2model = app.add_subcommand("seq2model", "ranked merge-model of a merge sequence");
    seq2model->add_option("sequence", in1)->required();
    seq2model->add_option("structure", in2)->required();
    seq2model->add_option("-o", out_path)->required();

    auto* model2seq = app.add_subcommand("model2seq", "layered merge sequence of a clean model");
    model2seq->add_option("model", in1)->required();
    model2seq->add_option("-o", out_path)->required();

    auto* cleanc = app.add_subcommand("clean", "cleaning of a ranked merge-model");
    cleanc->add_option("model", in1)->required();
    cleanc->add_option("-o", out_path)->required();

    auto* compactc = app.add_subcommand("compact", "compactification of a merge-model");
    compactc->add_option("model", in1)->required();
    compactc->add_option("-o", out_path)->required();

    auto* wrc = app.add_subcommand("wr", "ranked width of a ranked merge-model");
    wrc->add_option("--r", radius)->required();
    wrc->add_option("model", in1)->required();

    auto* interpretc = app.add_subcommand("interpret", "structure represented by a model");
    interpretc->add_option("model", in1)->required();
    interpretc->add_option("-o", out_path)->required();

    auto* bomegac = app.add_subcommand("bomega", "biclique number of the unordered part");
    bomegac->add_option("--limit", limit);
    bomegac->add_option("input", in1)->required();

    auto* cw2twin = app.add_subcommand("cw2twin", "twin-model of a clique-width expression");
    cw2twin->add_option("expression", in1)->required();
    cw2twin->add_option("-o", out_path)->required();
    cw2twin->add_option("--emit-expr", emit_expr, "also write the 2t-label witness expression");

    auto* twin2merge = app.add_subcommand("twin2merge", "loopless merge-model of a twin-model");
    twin2merge->add_option("model", in1)->required();
    twin2merge->add_option("-o", out_path)->required();

    auto* liftc = app.add_subcommand("lift", "merge-model of a compact clean merge-model");
    liftc->add_option("model", in1)->required();
    liftc->add_option("-o", out_path)->required();

    auto* cexpand = app.add_subcommand("cexpand", "complement expansion of a graph");
    cexpand->add_option("graph", in1)->required();
    cexpand->add_option("-o", out_path)->required();

    auto* dotc = app.add_subcommand("dot", "DOT export");
    dotc->add_option("file", in1)->required();
    dotc->add_option("-o", out_path)->required();

    auto* verifyc = app.add_subcommand("verify", "run the lemma verification suite");
    verifyc->add_option("--seed", seed);
    verifyc->add_option("--nmax", nmax);
    verifyc->add_option("--trials", trials);
    verifyc->add_option("--lemma", lemma, "run a single lemma by name");
    verifyc->add_option("--radii", radii);
    verifyc->add_option("--out", out_dir, "directory for counterexample files");
    verifyc->add_option("--summary", summary_path, "machine-readable JSON summary");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(in1, in2);
        if (*widthc) {
            auto seq = mw::parse_merge_sequence(slurp(in1));
            auto g = load_structure_or_graph(in2);
            if (auto rep = mw::validate_sequence(seq, g); !rep.ok) {
                std::cerr << "invalid sequence: " << rep.detail << "\n";
                return 1;
            }
            std::cout << mw::width(seq, g, radius) << "\n";
            return 0;
        }
        if (*mwc) {
            auto g = load_structure_or_graph(in1);
            std::cout << mw::mw_exact(g, radius, nmax).value << "\n";
            return 0;
        }
        if (*seq2model) {
            auto seq = mw::parse_merge_sequence(slurp(in1));
            auto g = load_structure_or_graph(in2);
            spit(out_path, mw::serialize(mw::model_of_sequence(seq, g)));
            return 0;
        }
        if (*model2seq) {
            spit(out_path, mw::serialize(mw::sequence_of_model(load_ranked_model(in1))));
            return 0;
        }
        if (*cleanc) {
            spit(out_path, mw::serialize(mw::cleaning(load_ranked_model(in1))));
            return 0;
        }
        if (*compactc) {
            auto parsed = mw::parse_merge_model(slurp(in1));
            if (parsed.ranking) {
                mw::RankedMergeModel rm{parsed.model, *parsed.ranking};
                spit(out_path, mw::serialize(mw::compactify_ranked(rm)));
            } else {
                spit(out_path, mw::serialize(mw::compactify(parsed.model)));
            }
            return 0;
        }
        if (*wrc) {
            std::cout << mw::ranked_width(load_ranked_model(in1), radius) << "\n";
            return 0;
        }
        if (*interpretc) {
            std::string text = slurp(in1);
            mw::BinaryStructure s;
            if (mw::detect_kind(text) == mw::FileKind::twin_model) {
                auto t = mw::parse_twin_model(text);
                if (auto rep = mw::validate_twin_model(t); !rep.ok) {
                    std::cerr << "invalid twin-model: " << rep.detail << "\n";
                    return 1;
                }
                s = mw::twin_interpret(t);
            } else {
                auto parsed = mw::parse_merge_model(text);
                if (auto rep = mw::validate_model(parsed.model); !rep.ok) {
                    std::cerr << "invalid merge-model: " << rep.detail << "\n";
                    return 1;
                }
                s = mw::interpret(parsed.model);
            }
            spit(out_path, mw::serialize(s));
            return 0;
        }
        if (*bomegac) {
            std::string text = slurp(in1);
            int value = 0;
            switch (mw::detect_kind(text)) {
            case mw::FileKind::structure:
                value = mw::biclique_number(mw::gaifman(mw::parse_structure(text)), limit);
                break;
            case mw::FileKind::graph:
                value = mw::biclique_number(mw::parse_graph(text), limit);
                break;
            case mw::FileKind::merge_model:
                value = mw::bomega(mw::parse_merge_model(text).model, limit);
                break;
            case mw::FileKind::twin_model:
                value = mw::twin_bomega(mw::parse_twin_model(text), limit);
                break;
            default:
                throw mw::ParseError("bomega expects a structure, graph or model file");
            }
            std::cout << value << "\n";
            return 0;
        }
        if (*cw2twin) {
            auto expr = mw::parse_expression_text(slurp(in1));
            auto built = mw::twin_model_of_expression(expr);
            spit(out_path, mw::serialize(built.model));
            if (!emit_expr.empty()) spit(emit_expr, mw::serialize(built.witness));
            return 0;
        }
        if (*twin2merge) {
            auto t = mw::parse_twin_model(slurp(in1));
            spit(out_path, mw::serialize(mw::merge_model_of_twin(t)));
            return 0;
        }
        if (*liftc) {
            spit(out_path, mw::serialize(mw::lift_model(load_ranked_model(in1))));
            return 0;
        }
        if (*cexpand) {
            auto g = mw::parse_graph(slurp(in1));
            spit(out_path, mw::serialize(mw::complement_expand(g)));
            return 0;
        }
        if (*dotc) return cmd_dot(in1, out_path);
        if (*verifyc) {
            mw::TrialConfig cfg;
            cfg.seed = seed;
            cfg.nmax = nmax;
            cfg.trials = trials;
            cfg.radii = radii;
            return cmd_verify(cfg, lemma, out_dir, summary_path);
        }
    } catch (const mw::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const mw::LimitError& e) {
        std::cerr << "limit exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
