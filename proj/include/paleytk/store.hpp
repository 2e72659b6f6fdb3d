#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace paleytk {

struct StoreRow {
  std::int64_t q = 0, p = 0;
  int r = 0;
  std::int64_t omega = 0;
  bool exact = false;
  std::string method;
  std::string witness_json;
  std::string timestamp;
  std::string version;
};

/// Append-only CSV results store with a version header row. Writers take an
/// advisory flock on the file; an exact row for a given q is never displaced
/// by an inexact one, and recording an identical exact result is a no-op.
class ResultsStore {
 public:
  explicit ResultsStore(std::string path);

  /// PALEY_STORE env var when set, else "paley_store.csv".
  static std::string default_path();

  const std::string& path() const { return path_; }

  std::vector<StoreRow> read_all() const;

  /// Best row for q: exact wins over inexact, then larger omega, then later.
  std::optional<StoreRow> best_for(std::int64_t q) const;

  /// Returns true when the row was appended.
  bool record(const StoreRow& row);

 private:
  std::string path_;
};

std::string utc_timestamp();

}  // namespace paleytk
