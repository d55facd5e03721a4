#include "service.hpp"

#include <httplib.h>
#include <json.hpp>

namespace gecscore::service {

using nlohmann::json;

namespace {

struct Target {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // optional base path, no trailing slash
};

Target split_endpoint(const std::string& endpoint) {
  std::string url = endpoint;
  while (!url.empty() && url.back() == '/') url.pop_back();
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw TransportError("invalid service URL '" + endpoint + "' (expected http://host:port)");
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, ""};
  return {url.substr(0, slash), url.substr(slash)};
}

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("service returned invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string post_json(const std::string& endpoint, const std::string& path, const std::string& body,
                      std::chrono::milliseconds timeout) {
  const Target target = split_endpoint(endpoint);
  httplib::Client client(target.origin);
  if (!client.is_valid()) throw TransportError("cannot create a client for '" + endpoint + "'");
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto res = client.Post(target.prefix + path, body, "application/json");
  if (!res) {
    throw TransportError("service at " + endpoint + " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    std::string detail = res->body.substr(0, 200);
    throw ProtocolError("service returned HTTP " + std::to_string(res->status) + " for " + path +
                        (detail.empty() ? "" : ": " + detail));
  }
  return res->body;
}

std::vector<std::string> post_texts(const std::string& endpoint, const std::string& path,
                                    const std::vector<std::string>& texts, const std::string& response_key,
                                    std::chrono::milliseconds timeout) {
  const json request = {{"texts", texts}};
  const json reply = parse_body(post_json(endpoint, path, request.dump(), timeout));
  if (!reply.is_object() || !reply.contains(response_key) || !reply[response_key].is_array())
    throw ProtocolError("service reply lacks array '" + response_key + "'");
  std::vector<std::string> out;
  for (const auto& item : reply[response_key]) {
    if (!item.is_string()) throw ProtocolError("non-string entry in '" + response_key + "'");
    out.push_back(item.get<std::string>());
  }
  if (out.size() != texts.size()) {
    throw ProtocolError("count mismatch: sent " + std::to_string(texts.size()) + ", received " +
                        std::to_string(out.size()));
  }
  return out;
}

std::vector<double> post_similarity(const std::string& endpoint, const std::string& metric,
                                    const std::vector<std::pair<std::string, std::string>>& pairs,
                                    std::chrono::milliseconds timeout) {
  json items = json::array();
  for (const auto& [a, b] : pairs) items.push_back({{"a", a}, {"b", b}});
  const json request = {{"pairs", items}, {"metric", metric}};
  const json reply = parse_body(post_json(endpoint, "/v1/similarity", request.dump(), timeout));
  if (!reply.is_object() || !reply.contains("scores") || !reply["scores"].is_array())
    throw ProtocolError("service reply lacks array 'scores'");
  std::vector<double> out;
  for (const auto& item : reply["scores"]) {
    if (!item.is_number()) throw ProtocolError("non-numeric entry in 'scores'");
    out.push_back(item.get<double>());
  }
  if (out.size() != pairs.size()) {
    throw ProtocolError("count mismatch: sent " + std::to_string(pairs.size()) + " pairs, received " +
                        std::to_string(out.size()) + " scores");
  }
  return out;
}

}  // namespace gecscore::service
