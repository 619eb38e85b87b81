#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mates/diagnosis.hpp"
#include "mates/kb_model.hpp"

namespace httplib {
class Server;
}

namespace mates::service {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view api_prefix = "/api/v1/";

/// Closed set of machine-readable error codes.
enum class ErrorCode { unknown_id, bad_request, kb_invalid };

std::string_view to_string(ErrorCode code) noexcept;

struct ApiResponse {
    int status = 200;
    std::string body;  // always JSON

    bool operator==(const ApiResponse&) const = default;
};

// Wire serialization. The HTTP layer and the CLI's JSON output both go
// through these, so responses are exactly the diagnosis results.
Json symptoms_json(const KnowledgeBase& kb);
Json diseases_json(const KnowledgeBase& kb);
Json care_plans_json(const KnowledgeBase& kb, const std::vector<CarePlan>& plans);
Json suggestions_json(const KnowledgeBase& kb, const ConsultationResult& result);
Json error_json(ErrorCode code, std::string_view message, const std::vector<std::string>& offending_ids = {});

/// Compact dump used for every response body.
std::string dump(const Json& json);

/// Stateless request handlers over one immutable KB. Every method is const
/// and safe to call from any number of threads.
class ConsultationApi {
public:
    /// Validates `kb`. An API built over an invalid KB answers every request
    /// with 500 `kb_invalid`.
    explicit ConsultationApi(KnowledgeBase kb);

    const KnowledgeBase& kb() const noexcept { return kb_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

    ApiResponse symptoms() const;
    ApiResponse diseases() const;
    ApiResponse consult_disease(std::string_view body) const;
    ApiResponse consult_symptoms(std::string_view body) const;

    /// Routes by method and path; unknown API paths get a 404 `bad_request`.
    ApiResponse handle(std::string_view method, std::string_view path, std::string_view body) const;

private:
    std::optional<ApiResponse> refuse_if_invalid() const;

    KnowledgeBase kb_;
    std::vector<Violation> violations_;
};

/// HTTP/1.1 front end: the JSON API under /api/v1/ plus optional static
/// files (the browser client bundle) at /.
class HttpServer {
public:
    explicit HttpServer(std::shared_ptr<const ConsultationApi> api,
                        std::optional<std::filesystem::path> static_root = std::nullopt);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the listening socket; port 0 picks a free port. Returns the bound
    /// port. Throws std::runtime_error if the address cannot be bound.
    int bind(const std::string& host, int port);

    /// Serves on the bound socket until stop(). Blocks.
    void listen();

    /// Serves from a background thread.
    void start();

    void stop();

private:
    std::shared_ptr<const ConsultationApi> api_;
    std::unique_ptr<httplib::Server> server_;
    std::thread worker_;
};

} // namespace mates::service
