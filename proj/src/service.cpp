#include "mates/service.hpp"

#include <httplib.h>

#include <stdexcept>
#include <variant>

namespace mates::service {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::unknown_id: return "unknown_id";
    case ErrorCode::bad_request: return "bad_request";
    case ErrorCode::kb_invalid: return "kb_invalid";
    }
    return "bad_request";
}

Json symptoms_json(const KnowledgeBase& kb) {
    Json out = Json::array();
    for (const auto& s : kb.symptoms) out.push_back({{"id", s.id.str()}, {"display_name", s.display_name}});
    return out;
}

Json diseases_json(const KnowledgeBase& kb) {
    Json out = Json::array();
    for (const auto& d : kb.diseases) out.push_back({{"id", d.id.str()}, {"display_name", d.display_name}});
    return out;
}

Json care_plans_json(const KnowledgeBase& kb, const std::vector<CarePlan>& plans) {
    Json results = Json::array();
    for (const auto& p : plans) {
        const DiseaseRecord* d = kb.find_disease(p.disease);
        Json entry;
        entry["disease_id"] = p.disease.str();
        entry["display_name"] = d ? d->display_name : p.disease.str();
        entry["care_treatment"] = p.care_treatment;
        entry["if_untreated"] = p.if_untreated;
        results.push_back(std::move(entry));
    }
    Json out;
    out["results"] = std::move(results);
    return out;
}

Json suggestions_json(const KnowledgeBase& kb, const ConsultationResult& result) {
    Json suggestions = Json::array();
    for (const auto& s : result.suggestions) {
        const DiseaseRecord* d = kb.find_disease(s.disease);
        Json matched = Json::array();
        for (const auto& m : s.matched) matched.push_back(m.str());
        Json entry;
        entry["disease_id"] = s.disease.str();
        entry["display_name"] = d ? d->display_name : s.disease.str();
        entry["score"] = s.score;
        entry["matched_symptom_ids"] = std::move(matched);
        entry["care_treatment"] = s.care_treatment;
        entry["if_untreated"] = s.if_untreated;
        suggestions.push_back(std::move(entry));
    }
    Json out;
    out["suggestions"] = std::move(suggestions);
    return out;
}

Json error_json(ErrorCode code, std::string_view message, const std::vector<std::string>& offending_ids) {
    Json out;
    out["code"] = std::string(to_string(code));
    out["message"] = std::string(message);
    out["offending_ids"] = offending_ids;
    return out;
}

std::string dump(const Json& json) {
    return json.dump(-1, ' ', false, Json::error_handler_t::replace);
}

namespace {

ApiResponse ok(const Json& body) {
    return {200, dump(body)};
}

ApiResponse fail(int status, ErrorCode code, std::string_view message,
                 const std::vector<std::string>& ids = {}) {
    return {status, dump(error_json(code, message, ids))};
}

/// Extracts `{"<key>": ["id", ...]}` or an error response.
std::variant<std::vector<std::string>, ApiResponse> id_list(std::string_view body, const char* key) {
    const Json parsed = Json::parse(body, nullptr, false);
    if (parsed.is_discarded()) return fail(400, ErrorCode::bad_request, "request body is not valid JSON");
    if (!parsed.is_object()) return fail(400, ErrorCode::bad_request, "request body must be a JSON object");
    auto it = parsed.find(key);
    if (it == parsed.end() || !it->is_array())
        return fail(400, ErrorCode::bad_request, std::string("field '") + key + "' must be an array of ids");
    std::vector<std::string> ids;
    for (const auto& v : *it) {
        if (!v.is_string())
            return fail(400, ErrorCode::bad_request, std::string("field '") + key + "' must contain only strings");
        ids.push_back(v.get<std::string>());
    }
    return ids;
}

} // namespace

ConsultationApi::ConsultationApi(KnowledgeBase kb) : kb_(std::move(kb)), violations_(validate(kb_)) {}

std::optional<ApiResponse> ConsultationApi::refuse_if_invalid() const {
    if (violations_.empty()) return std::nullopt;
    std::vector<std::string> ids;
    for (const auto& v : violations_) ids.push_back(v.id);
    return fail(500, ErrorCode::kb_invalid, "the loaded knowledge base failed validation", ids);
}

ApiResponse ConsultationApi::symptoms() const {
    if (auto refused = refuse_if_invalid()) return *refused;
    return ok(symptoms_json(kb_));
}

ApiResponse ConsultationApi::diseases() const {
    if (auto refused = refuse_if_invalid()) return *refused;
    return ok(diseases_json(kb_));
}

ApiResponse ConsultationApi::consult_disease(std::string_view body) const {
    if (auto refused = refuse_if_invalid()) return *refused;
    auto ids = id_list(body, "disease_ids");
    if (auto* err = std::get_if<ApiResponse>(&ids)) return *err;
    const auto& tokens = std::get<std::vector<std::string>>(ids);
    if (tokens.empty()) return fail(400, ErrorCode::bad_request, "disease_ids must not be empty");

    std::vector<DiseaseId> diseases;
    diseases.reserve(tokens.size());
    for (const auto& t : tokens) diseases.emplace_back(t);
    try {
        return ok(care_plans_json(kb_, consult_by_disease(kb_, diseases)));
    } catch (const UnknownIdError& e) {
        return fail(404, ErrorCode::unknown_id, e.what(), e.ids());
    }
}

ApiResponse ConsultationApi::consult_symptoms(std::string_view body) const {
    if (auto refused = refuse_if_invalid()) return *refused;
    auto ids = id_list(body, "symptom_ids");
    if (auto* err = std::get_if<ApiResponse>(&ids)) return *err;
    const auto& tokens = std::get<std::vector<std::string>>(ids);
    try {
        return ok(suggestions_json(kb_, rank(kb_, Query::from_tokens(tokens))));
    } catch (const UnknownIdError& e) {
        return fail(404, ErrorCode::unknown_id, e.what(), e.ids());
    }
}

ApiResponse ConsultationApi::handle(std::string_view method, std::string_view path, std::string_view body) const {
    if (method == "GET" && path == "/api/v1/symptoms") return symptoms();
    if (method == "GET" && path == "/api/v1/diseases") return diseases();
    if (method == "POST" && path == "/api/v1/consult/disease") return consult_disease(body);
    if (method == "POST" && path == "/api/v1/consult/symptoms") return consult_symptoms(body);
    return fail(404, ErrorCode::bad_request, "no such endpoint: " + std::string(method) + " " + std::string(path));
}

HttpServer::HttpServer(std::shared_ptr<const ConsultationApi> api, std::optional<std::filesystem::path> static_root)
    : api_(std::move(api)), server_(std::make_unique<httplib::Server>()) {
    auto route = [api = api_](const httplib::Request& req, httplib::Response& res) {
        const ApiResponse out = api->handle(req.method, req.path, req.body);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    for (const char* path : {"/api/v1/symptoms", "/api/v1/diseases"}) server_->Get(path, route);
    for (const char* path : {"/api/v1/consult/disease", "/api/v1/consult/symptoms"}) server_->Post(path, route);

    // Anything else under the API prefix still answers with an ApiError body.
    const std::string catch_all = std::string(api_prefix) + ".*";
    server_->Get(catch_all, route);
    server_->Post(catch_all, route);
    server_->Put(catch_all, route);
    server_->Delete(catch_all, route);
    server_->Patch(catch_all, route);

    if (static_root && !server_->set_mount_point("/", static_root->string()))
        throw std::runtime_error("static directory not found: " + static_root->string());
}

HttpServer::~HttpServer() {
    stop();
}

int HttpServer::bind(const std::string& host, int port) {
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() {
    server_->listen_after_bind();
}

void HttpServer::start() {
    worker_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
}

void HttpServer::stop() {
    server_->stop();
    if (worker_.joinable()) worker_.join();
}

} // namespace mates::service
