#include "lrc/checkpoint.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace lrc {

std::string ScanRecord::key() const {
  return std::to_string(n) + ":" + std::to_string(cardinality) + ":" +
         std::to_string(a_start) + ":" + std::to_string(b_start);
}

std::string scan_record_to_json(const ScanRecord& rec) {
  nlohmann::json j;
  j["n"] = rec.n;
  j["two_m"] = rec.level;
  j["card"] = rec.cardinality;
  j["a_start"] = rec.a_start;
  j["b_start"] = rec.b_start;
  j["ok"] = rec.ok;
  return j.dump();
}

ScanRecord scan_record_from_json(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  ScanRecord rec;
  rec.n = j.at("n").get<std::int64_t>();
  rec.level = j.at("two_m").get<std::int64_t>();
  rec.cardinality = j.at("card").get<std::int64_t>();
  rec.a_start = j.at("a_start").get<std::int64_t>();
  rec.b_start = j.at("b_start").get<std::int64_t>();
  rec.ok = j.at("ok").get<bool>();
  return rec;
}

CheckpointFile::CheckpointFile(std::string path) : path_(std::move(path)) {}

std::vector<ScanRecord> CheckpointFile::replay() const {
  std::vector<ScanRecord> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(scan_record_from_json(lines[i]));
    } catch (const std::exception&) {
      // a truncated final line from an interrupted run is dropped
      if (i + 1 == lines.size()) break;
      throw;
    }
  }
  return out;
}

void CheckpointFile::append(const ScanRecord& rec) {
  pending_ += scan_record_to_json(rec);
  pending_ += '\n';
  if (pending_.size() > 1 << 16) flush();
}

void CheckpointFile::flush() {
  if (pending_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path_);
  out << pending_;
  out.flush();
  pending_.clear();
}

}  // namespace lrc
