#include "paleytk/store.hpp"

#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "paleytk/common.hpp"

namespace paleytk {

namespace {

constexpr const char* kHeaderVersion = "# paleytk-store v1";
constexpr const char* kColumns =
    "q,p,r,omega,exact,method,witness,timestamp,toolkit_version";

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// Splits one CSV record; quoted fields may contain commas and doubled quotes.
std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string row_to_csv(const StoreRow& row) {
  std::ostringstream os;
  os << row.q << ',' << row.p << ',' << row.r << ',' << row.omega << ','
     << (row.exact ? "true" : "false") << ',' << csv_escape(row.method) << ','
     << csv_escape(row.witness_json) << ',' << row.timestamp << ','
     << row.version;
  return os.str();
}

// RAII advisory lock on the store file; creates the file when missing.
class FileLock {
 public:
  explicit FileLock(const std::string& path) {
    fp_ = std::fopen(path.c_str(), "a+");
    if (!fp_) raise("StoreIO", "cannot open store file " + path);
    flock(fileno(fp_), LOCK_EX);
  }
  ~FileLock() {
    if (fp_) {
      flock(fileno(fp_), LOCK_UN);
      std::fclose(fp_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  std::FILE* fp_ = nullptr;
};

std::vector<StoreRow> parse_store(std::istream& in) {
  std::vector<StoreRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("q,p,r,", 0) == 0) continue;  // column header
    std::vector<std::string> f = csv_split(line);
    if (f.size() != 9) continue;
    StoreRow row;
    row.q = std::stoll(f[0]);
    row.p = std::stoll(f[1]);
    row.r = std::stoi(f[2]);
    row.omega = std::stoll(f[3]);
    row.exact = f[4] == "true";
    row.method = f[5];
    row.witness_json = f[6];
    row.timestamp = f[7];
    row.version = f[8];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResultsStore::ResultsStore(std::string path) : path_(std::move(path)) {}

std::string ResultsStore::default_path() {
  if (const char* env = std::getenv("PALEY_STORE")) return env;
  return "paley_store.csv";
}

std::vector<StoreRow> ResultsStore::read_all() const {
  std::ifstream in(path_);
  if (!in) return {};
  return parse_store(in);
}

std::optional<StoreRow> ResultsStore::best_for(std::int64_t q) const {
  std::optional<StoreRow> best;
  for (const StoreRow& row : read_all()) {
    if (row.q != q) continue;
    if (!best || (row.exact && !best->exact) ||
        (row.exact == best->exact && row.omega >= best->omega)) {
      best = row;
    }
  }
  return best;
}

bool ResultsStore::record(const StoreRow& row) {
  FileLock lock(path_);
  std::vector<StoreRow> rows;
  {
    std::ifstream in(path_);
    if (in) rows = parse_store(in);
  }
  bool have_any = false;
  for (const StoreRow& existing : rows) {
    if (existing.q != row.q) continue;
    have_any = true;
    if (existing.exact) {
      // exact rows are final: never displaced, never duplicated
      return false;
    }
  }
  if (!row.exact && have_any) {
    std::int64_t best_inexact = -1;
    for (const StoreRow& existing : rows) {
      if (existing.q == row.q) best_inexact = std::max(best_inexact, existing.omega);
    }
    if (row.omega <= best_inexact) return false;
  }

  std::ofstream out(path_, std::ios::app);
  if (!out) raise("StoreIO", "cannot append to store file " + path_);
  if (rows.empty()) {
    out.seekp(0, std::ios::end);
    if (out.tellp() == 0) {
      out << kHeaderVersion << '\n' << kColumns << '\n';
    }
  }
  out << row_to_csv(row) << '\n';
  return true;
}

}  // namespace paleytk
