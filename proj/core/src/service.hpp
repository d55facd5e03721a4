#pragma once

// Client side of the correction/similarity service protocol:
//   POST /v1/correct     {"texts": [...]}                    -> {"corrected": [...]}
//   POST /v1/paraphrase  {"texts": [...]}                    -> {"paraphrased": [...]}
//   POST /v1/similarity  {"pairs": [{"a","b"}...], "metric"} -> {"scores": [...]}

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <exception>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "gecscore/errors.hpp"

namespace gecscore::service {

// POSTs a JSON body and returns the response body of a 200 reply. Throws
// TransportError when no reply arrives and ProtocolError otherwise.
std::string post_json(const std::string& endpoint, const std::string& path, const std::string& body,
                      std::chrono::milliseconds timeout);

// Sends `texts` under "texts" and reads the equally long string array
// `response_key` back.
std::vector<std::string> post_texts(const std::string& endpoint, const std::string& path,
                                    const std::vector<std::string>& texts, const std::string& response_key,
                                    std::chrono::milliseconds timeout);

std::vector<double> post_similarity(const std::string& endpoint, const std::string& metric,
                                    const std::vector<std::pair<std::string, std::string>>& pairs,
                                    std::chrono::milliseconds timeout);

// Runs fn(begin, end) over [0, n) in batches, at most max_in_flight at a time,
// and concatenates the results. Every batch runs even when another fails; the
// thrown error lists the input indices of all failed batches.
template <class T, class Fn>
std::vector<T> run_batched(std::size_t n, std::size_t batch_size, std::size_t max_in_flight, Fn fn) {
  batch_size = std::max<std::size_t>(batch_size, 1);
  max_in_flight = std::max<std::size_t>(max_in_flight, 1);
  std::vector<std::pair<std::size_t, std::size_t>> batches;
  for (std::size_t b = 0; b < n; b += batch_size) batches.emplace_back(b, std::min(n, b + batch_size));

  std::vector<T> out(n);
  std::vector<std::size_t> failed;
  std::string first_error;
  bool transport = false;

  for (std::size_t w = 0; w < batches.size(); w += max_in_flight) {
    const std::size_t w_end = std::min(batches.size(), w + max_in_flight);
    std::vector<std::future<std::vector<T>>> inflight;
    for (std::size_t b = w; b < w_end; ++b) {
      const auto [begin, end] = batches[b];
      inflight.push_back(std::async(std::launch::async, [&fn, begin = begin, end = end] { return fn(begin, end); }));
    }
    for (std::size_t b = w; b < w_end; ++b) {
      const auto [begin, end] = batches[b];
      try {
        auto part = inflight[b - w].get();
        if (part.size() != end - begin) {
          throw ProtocolError("count mismatch: sent " + std::to_string(end - begin) + ", received " +
                              std::to_string(part.size()));
        }
        std::move(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(begin));
      } catch (const std::exception& e) {
        if (first_error.empty()) {
          first_error = e.what();
          transport = dynamic_cast<const TransportError*>(&e) != nullptr;
        }
        for (std::size_t i = begin; i < end; ++i) failed.push_back(i);
      }
    }
  }
  if (!failed.empty()) {
    const std::string msg = first_error + " (" + std::to_string(failed.size()) + " of " + std::to_string(n) +
                            " inputs failed)";
    if (transport) throw TransportError(msg, std::move(failed));
    throw ProtocolError(msg, std::move(failed));
  }
  return out;
}

}  // namespace gecscore::service
