#include "dauction/instance_io.hpp"

#include <charconv>
#include <limits>
#include <span>
#include <fstream>
#include <sstream>
#include <vector>

namespace dauction {
namespace {

class LineError {
 public:
  LineError(std::size_t line) : line_(line) {}
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line_) + ": " + msg);
  }

 private:
  std::size_t line_;
};

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

std::int64_t to_int(std::string_view tok, const LineError& where, std::string_view field) {
  std::int64_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    where.fail("field '" + std::string(field) + "': expected an integer, got '" +
               std::string(tok) + "'");
  }
  return v;
}

std::vector<BuyerId> to_ids(std::span<const std::string_view> toks, const LineError& where,
                            std::string_view field) {
  std::vector<BuyerId> ids;
  ids.reserve(toks.size());
  for (auto tok : toks) {
    const auto v = to_int(tok, where, field);
    if (v < 0 || v > std::numeric_limits<BuyerId>::max()) {
      where.fail("field '" + std::string(field) + "': id out of range");
    }
    ids.push_back(static_cast<BuyerId>(v));
  }
  return ids;
}

void append_ids(std::ostringstream& os, const std::vector<BuyerId>& ids) {
  for (BuyerId id : ids) os << ' ' << id;
}

}  // namespace

InstanceDocument parse_instance(std::string_view text) {
  InstanceDocument doc;
  bool seen_version = false;
  bool seen_k = false;
  bool seen_reserve = false;
  bool seen_cap = false;
  bool seen_seller = false;
  std::optional<std::size_t> expected_buyers;
  std::size_t line_no = 0;
  std::size_t seller_line = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const LineError where(line_no);
    const auto toks = tokenize(line);
    if (toks.empty() || toks[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto key = toks[0];
    const auto rest = std::span<const std::string_view>(toks).subspan(1);

    if (!seen_version) {
      if (key != kInstanceMagic || rest.size() != 1) {
        where.fail("expected version line '" + std::string(kInstanceMagic) + " " +
                   std::to_string(kInstanceVersion) + "'");
      }
      if (to_int(rest[0], where, "version") != kInstanceVersion) {
        where.fail("unsupported version " + std::string(rest[0]));
      }
      seen_version = true;
    } else if (expected_buyers) {
      if (key != "buyer") where.fail("expected a buyer record, got '" + std::string(key) + "'");
      if (doc.instance.buyers.size() == *expected_buyers) {
        where.fail("more buyer records than declared (" + std::to_string(*expected_buyers) + ")");
      }
      // buyer <id> value <v> followers <ids...>
      if (rest.size() < 4 || rest[1] != "value" || rest[3] != "followers") {
        where.fail("expected 'buyer <id> value <v> followers <ids...>'");
      }
      const auto id = to_int(rest[0], where, "id");
      if (id != static_cast<std::int64_t>(doc.instance.buyers.size())) {
        where.fail("field 'id': buyer ids must be dense and in order, expected " +
                   std::to_string(doc.instance.buyers.size()));
      }
      BuyerType b;
      b.value = to_int(rest[2], where, "value");
      if (b.value < 0) where.fail("field 'value': negative value");
      if (doc.instance.value_cap && b.value > *doc.instance.value_cap) {
        where.fail("field 'value': above value_cap " + std::to_string(*doc.instance.value_cap));
      }
      b.followers = to_ids(rest.subspan(4), where, "followers");
      for (std::size_t f = 0; f < b.followers.size(); ++f) {
        const BuyerId t = b.followers[f];
        if (static_cast<std::size_t>(t) >= *expected_buyers) {
          where.fail("field 'followers': dangling buyer id " + std::to_string(t));
        }
        if (t == id) where.fail("field 'followers': buyer follows herself");
        if (f > 0 && b.followers[f - 1] >= t) {
          where.fail("field 'followers': ids must be strictly increasing");
        }
      }
      doc.instance.buyers.push_back(std::move(b));
    } else if (key == "k") {
      if (seen_k || rest.size() != 1) where.fail("field 'k': expected exactly one 'k <units>'");
      const auto k = to_int(rest[0], where, "k");
      if (k < 1 || k > std::numeric_limits<int>::max()) where.fail("field 'k': must be >= 1");
      doc.instance.k = static_cast<int>(k);
      seen_k = true;
    } else if (key == "reserve") {
      if (seen_reserve || rest.size() != 1) where.fail("field 'reserve': expected one value");
      doc.reserve = to_int(rest[0], where, "reserve");
      if (*doc.reserve < 0) where.fail("field 'reserve': negative value");
      seen_reserve = true;
    } else if (key == "value_cap") {
      if (seen_cap || rest.size() != 1) where.fail("field 'value_cap': expected one value");
      doc.instance.value_cap = to_int(rest[0], where, "value_cap");
      if (*doc.instance.value_cap < 0) where.fail("field 'value_cap': negative value");
      seen_cap = true;
    } else if (key == "seller_followers") {
      if (seen_seller) where.fail("field 'seller_followers': repeated");
      doc.instance.seller_followers = to_ids(rest, where, "seller_followers");
      seller_line = line_no;
      seen_seller = true;
    } else if (key == "buyers") {
      if (rest.size() != 1) where.fail("field 'buyers': expected 'buyers <count>'");
      const auto count = to_int(rest[0], where, "buyers");
      if (count < 0) where.fail("field 'buyers': negative count");
      expected_buyers = static_cast<std::size_t>(count);
      if (!seen_k) where.fail("field 'k' must precede the buyer list");
      if (!seen_seller) where.fail("field 'seller_followers' must precede the buyer list");
      const LineError at_seller(seller_line);
      const auto& direct = doc.instance.seller_followers;
      for (std::size_t f = 0; f < direct.size(); ++f) {
        if (static_cast<std::size_t>(direct[f]) >= *expected_buyers) {
          at_seller.fail("field 'seller_followers': dangling buyer id " +
                         std::to_string(direct[f]));
        }
        if (f > 0 && direct[f - 1] >= direct[f]) {
          at_seller.fail("field 'seller_followers': ids must be strictly increasing");
        }
      }
    } else {
      where.fail("unknown field '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }

  if (!seen_version) throw InputError("line 1: missing version line");
  if (!expected_buyers) throw InputError("missing 'buyers <count>' record");
  if (doc.instance.buyers.size() != *expected_buyers) {
    throw InputError("declared " + std::to_string(*expected_buyers) + " buyers, found " +
                     std::to_string(doc.instance.buyers.size()));
  }
  validate(doc.instance);
  return doc;
}

std::string serialize_instance(const InstanceDocument& doc) {
  std::ostringstream os;
  const auto& inst = doc.instance;
  os << kInstanceMagic << ' ' << kInstanceVersion << '\n';
  os << "k " << inst.k << '\n';
  if (doc.reserve) os << "reserve " << *doc.reserve << '\n';
  if (inst.value_cap) os << "value_cap " << *inst.value_cap << '\n';
  os << "seller_followers";
  append_ids(os, inst.seller_followers);
  os << '\n' << "buyers " << inst.buyers.size() << '\n';
  for (std::size_t i = 0; i < inst.buyers.size(); ++i) {
    os << "buyer " << i << " value " << inst.buyers[i].value << " followers";
    append_ids(os, inst.buyers[i].followers);
    os << '\n';
  }
  return os.str();
}

std::string serialize_instance(const AuctionInstance& instance) {
  return serialize_instance(InstanceDocument{instance, std::nullopt});
}

InstanceDocument load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace dauction
