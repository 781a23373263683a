#include "persym/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace persym {

using nlohmann::json;

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("checkpoint " + path + " is not valid JSON: " +
                             e.what());
  }
  Checkpoint cp;
  try {
    cp.layout_version = doc.at("layout").get<std::string>();
    cp.shape_text = doc.at("shape").get<std::string>();
    cp.shard_count = doc.at("shards").get<std::size_t>();
    for (const auto& [key, counts] : doc.at("completed").items()) {
      std::vector<ExactCount> parsed;
      parsed.reserve(counts.size());
      for (const auto& c : counts) {
        parsed.emplace_back(c.get<std::string>());
      }
      cp.completed.emplace(std::stoull(key), std::move(parsed));
    }
  } catch (const json::exception& e) {
    throw std::runtime_error("checkpoint " + path + " is malformed: " +
                             e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("checkpoint " + path + " is malformed: " +
                             e.what());
  }
  return cp;
}

void Checkpoint::save(const std::string& path) const {
  json doc;
  doc["layout"] = layout_version;
  doc["shape"] = shape_text;
  doc["shards"] = shard_count;
  json done = json::object();
  for (const auto& [shard, counts] : completed) {
    json arr = json::array();
    for (const ExactCount& c : counts) arr.push_back(c.str());
    done[std::to_string(shard)] = std::move(arr);
  }
  doc["completed"] = std::move(done);

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
    out << doc.dump(1) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("short write on checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

void Checkpoint::validate_for(const Shape& shape, std::size_t shards) const {
  if (layout_version != kLayoutVersion) {
    throw std::runtime_error("checkpoint layout '" + layout_version +
                             "' does not match current layout '" +
                             std::string(kLayoutVersion) + "'");
  }
  if (shape_text != shape.to_string()) {
    throw std::runtime_error("checkpoint is for shape " + shape_text +
                             ", not " + shape.to_string());
  }
  if (shard_count != shards) {
    throw std::runtime_error("checkpoint has " + std::to_string(shard_count) +
                             " shards, run wants " + std::to_string(shards));
  }
  const std::size_t want = shape.total_rows() + 1;
  for (const auto& [shard, counts] : completed) {
    if (shard >= shard_count) {
      throw std::runtime_error("checkpoint lists shard " +
                               std::to_string(shard) + " out of range");
    }
    if (counts.size() != want) {
      throw std::runtime_error("checkpoint shard " + std::to_string(shard) +
                               " has " + std::to_string(counts.size()) +
                               " rank buckets, expected " + std::to_string(want));
    }
    for (const ExactCount& c : counts) {
      if (c < 0) {
        throw std::runtime_error("checkpoint shard " + std::to_string(shard) +
                                 " holds a negative count");
      }
    }
  }
}

} // namespace persym
