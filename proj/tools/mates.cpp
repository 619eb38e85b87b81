// Command-line front end: serve the consultation API, run one-shot
// consultations, and validate knowledge-base files.

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>

#include "mates/diagnosis.hpp"
#include "mates/kb_model.hpp"
#include "mates/rule_dsl.hpp"
#include "mates/service.hpp"

namespace {

constexpr int exit_io = 1;
constexpr int exit_domain = 2;

struct ExitError {
    int code;
};

std::string resolve_kb_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MATES_KB"); env && *env) return env;
    return mates::default_kb_path().string();
}

mates::KnowledgeBase load(const std::string& path) {
    try {
        return mates::load_kb_file(path);
    } catch (const mates::KbIoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        throw ExitError{exit_io};
    } catch (const mates::ParseError& e) {
        std::cerr << path << ':' << e.what() << '\n';
        throw ExitError{exit_domain};
    }
}

bool report_violations(const std::string& path, const std::vector<mates::Violation>& violations) {
    for (const auto& v : violations)
        std::cerr << path << ": " << mates::to_string(v.kind) << " '" << v.id << "': " << v.message << '\n';
    return violations.empty();
}

void print_block(const char* heading, const std::string& text) {
    std::cout << "  " << heading << ":\n    " << text << '\n';
}

int run_validate(const std::string& kb_flag) {
    const auto path = resolve_kb_path(kb_flag);
    const auto kb = load(path);
    if (!report_violations(path, mates::validate(kb))) return exit_domain;
    std::cout << path << ": ok (" << kb.symptoms.size() << " symptoms, " << kb.diseases.size()
              << " diseases, " << kb.rules.size() << " rules)\n";
    return 0;
}

int run_consult(const std::string& kb_flag, const std::vector<std::string>& symptoms,
                const std::vector<std::string>& diseases, const std::string& format) {
    const auto path = resolve_kb_path(kb_flag);
    const auto kb = load(path);
    if (!report_violations(path, mates::validate(kb))) return exit_domain;
    const bool json = format == "json";

    try {
        if (!diseases.empty()) {
            std::vector<mates::DiseaseId> ids(diseases.begin(), diseases.end());
            const auto plans = mates::consult_by_disease(kb, ids);
            if (json) {
                std::cout << mates::service::care_plans_json(kb, plans).dump(2) << '\n';
                return 0;
            }
            for (const auto& p : plans) {
                std::cout << kb.find_disease(p.disease)->display_name << " [" << p.disease << "]\n";
                print_block("Care and Treatment", p.care_treatment);
                print_block("If not treated", p.if_untreated);
            }
            return 0;
        }

        const auto result = mates::rank(kb, mates::Query::from_tokens(symptoms));
        if (json) {
            std::cout << mates::service::suggestions_json(kb, result).dump(2) << '\n';
            return 0;
        }
        if (result.suggestions.empty()) {
            std::cout << "no matching disease\n";
            return 0;
        }
        std::size_t position = 0;
        for (const auto& s : result.suggestions) {
            std::cout << std::setw(2) << ++position << ". " << kb.find_disease(s.disease)->display_name
                      << " [" << s.disease << "]  score " << s.score << "  matched:";
            for (const auto& m : s.matched) std::cout << ' ' << m;
            std::cout << '\n';
            print_block("Care and Treatment", s.care_treatment);
            print_block("If not treated", s.if_untreated);
        }
        return 0;
    } catch (const mates::UnknownIdError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_domain;
    }
}

mates::service::HttpServer* active_server = nullptr;

extern "C" void handle_signal(int) {
    if (active_server) active_server->stop();
}

int run_serve(const std::string& kb_flag, const std::string& host, int port, const std::string& static_dir) {
    const auto path = resolve_kb_path(kb_flag);
    auto kb = load(path);
    if (!report_violations(path, mates::validate(kb))) {
        std::cerr << "refusing to start: knowledge base failed validation\n";
        return exit_domain;
    }

    std::optional<std::filesystem::path> root;
    if (!static_dir.empty()) {
        root = static_dir;
    }
#ifdef MATES_WEBUI_DIR
    else if (std::filesystem::is_directory(MATES_WEBUI_DIR)) {
        root = MATES_WEBUI_DIR;
    }
#endif

    try {
        auto api = std::make_shared<const mates::service::ConsultationApi>(std::move(kb));
        mates::service::HttpServer server(api, root);
        const int bound = server.bind(host, port);
        std::cerr << "serving " << path << " on http://" << host << ':' << bound << '\n';
        active_server = &server;
        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        server.listen();
        active_server = nullptr;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maternal care expert system: consultation service and tools"};
    app.require_subcommand(1);

    std::string kb_flag;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string static_dir;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP consultation API");
    serve->add_option("--kb", kb_flag, "Knowledge base file (default: $MATES_KB or the bundled KB)");
    serve->add_option("--port", port, "TCP port; 0 picks a free one")->capture_default_str()->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Listen address")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory served at / (browser client bundle)")
        ->check(CLI::ExistingDirectory);

    std::vector<std::string> symptoms;
    std::vector<std::string> diseases;
    std::string format = "table";
    auto* consult = app.add_subcommand("consult", "One-shot consultation");
    consult->add_option("--kb", kb_flag, "Knowledge base file");
    auto* by_symptom = consult->add_option("--symptoms", symptoms, "Comma-separated symptom ids")->delimiter(',');
    auto* by_disease = consult->add_option("--diseases", diseases, "Comma-separated disease ids")->delimiter(',');
    by_symptom->excludes(by_disease);
    consult->add_option("--format", format, "Output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "table"}));

    auto* validate = app.add_subcommand("validate", "Check a knowledge base file");
    validate->add_option("--kb", kb_flag, "Knowledge base file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*serve) return run_serve(kb_flag, host, port, static_dir);
        if (*consult) {
            if (by_symptom->count() == 0 && by_disease->count() == 0) {
                std::cerr << "error: consult needs --symptoms or --diseases\n";
                return exit_domain;
            }
            return run_consult(kb_flag, symptoms, diseases, format);
        }
        return run_validate(kb_flag);
    } catch (const ExitError& e) {
        return e.code;
    }
}
