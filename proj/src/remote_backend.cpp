#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "ctextr/retrieval.hpp"

namespace ctextr {

RemoteBackend::RemoteBackend(std::string endpoint, int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {
  static const std::regex kEndpoint(R"(^(https?://[^/\s]+)(/[^\s?#]*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint, m, kEndpoint)) {
    throw Error("invalid remote endpoint '" + endpoint + "'");
  }
  origin_ = m[1].str();
  path_ = m[2].matched && !m[2].str().empty() ? m[2].str() : "/";
}

std::vector<WebDocument> RemoteBackend::search(std::string_view query_text,
                                               std::size_t k) const {
  if (k < 1) throw Error("k must be >= 1");
  // One client per call keeps concurrent searches independent.
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);

  const httplib::Params params = {{"q", std::string(query_text)},
                                  {"num", std::to_string(k)}};
  const auto res = client.Get(path_, params, httplib::Headers{});
  if (!res) {
    throw Error("remote search failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error("remote search returned HTTP " + std::to_string(res->status));
  }

  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error&) {
    throw Error("remote search returned invalid JSON");
  }
  std::vector<WebDocument> out;
  if (!body.is_object() || !body.contains("results") || !body["results"].is_array()) {
    return out;
  }
  for (const auto& r : body["results"]) {
    if (out.size() >= k) break;
    if (!r.is_object()) continue;
    WebDocument d;
    auto text = [&r](const char* key) {
      const auto it = r.find(key);
      return it != r.end() && it->is_string() ? it->get<std::string>() : std::string();
    };
    d.url = text("url");
    d.title = text("title");
    d.abstract = text("abstract");
    if (!is_absolute_uri(d.url) || (d.title.empty() && d.abstract.empty())) continue;
    d.source_rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace ctextr
