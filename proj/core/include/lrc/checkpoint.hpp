#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrc {

// One unit of work in an f(n) scan, as persisted to the checkpoint file.
struct ScanRecord {
  std::int64_t n = 0;
  std::int64_t level = 0;        // the 2m threshold the pair counts against
  std::int64_t cardinality = 0;  // |A| = |B|
  std::int64_t a_start = 0;
  std::int64_t b_start = 0;
  bool ok = false;

  std::string key() const;
};

std::string scan_record_to_json(const ScanRecord& rec);
ScanRecord scan_record_from_json(const std::string& line);

// Replayable, append-only JSONL checkpoint.
class CheckpointFile {
 public:
  explicit CheckpointFile(std::string path);

  // loads existing records; missing file is an empty checkpoint
  std::vector<ScanRecord> replay() const;

  void append(const ScanRecord& rec);
  void flush();

 private:
  std::string path_;
  std::string pending_;
};

}  // namespace lrc
