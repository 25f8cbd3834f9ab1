// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Expected values below are transcribed from the case-study
// tables; nothing is read back from the implementation to build them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "store/catalog.hpp"
#include "store/commands.hpp"
#include "store/docgen.hpp"
#include "store/hash.hpp"
#include "store/persistence.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/workflow.hpp"
#include "support.hpp"

using namespace store;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      note = what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double budget_ms, const std::function<void(Outcome&)>& body) {
  Outcome outcome;
  const auto start = Clock::now();
  try {
    body(outcome);
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.note = std::string("exception: ") + e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  if (budget_ms > 0 && ms >= budget_ms) {
    std::ostringstream s;
    s << "took " << ms << " ms, budget " << budget_ms << " ms";
    outcome.expect(false, s.str());
  }
  if (!outcome.ok) ++failures;
  std::printf("%s  %-28s %10.3f ms%s%s\n", outcome.ok ? "PASS" : "FAIL", name.c_str(), ms,
              outcome.note.empty() ? "" : "  ", outcome.note.c_str());
  std::fflush(stdout);
}

// Published risk ranking, in tenths.
const std::vector<std::pair<std::string, int>> kTable11 = {
    {"T1", 100}, {"T5", 100}, {"T10", 100}, {"T4", 92}, {"T8", 92}, {"T6", 76},
    {"T9", 76},  {"T12", 76}, {"T2", 66},   {"T7", 64}, {"T11", 52}, {"T3", 38},
};

// Published threat table: STRIDE columns S,T,R,I,D,E as x/., then Mitigated.
const std::vector<std::tuple<std::string, std::string, std::string>> kTable10 = {
    {"T1", ".x...x", "No"},  {"T2", "...x.x", "No"},   {"T3", ".....x", "No"},  {"T4", "x..x..", "No"},
    {"T5", ".xxx.x", "Yes"}, {"T6", ".....x", "Yes"},  {"T7", ".....x", "Yes"}, {"T8", "xx...x", "No"},
    {"T9", ".....x", "Yes"}, {"T10", ".....x", "Yes"}, {"T11", ".....x", "Yes"}, {"T12", "..x...", "No"},
};

// Published requirements: threat, requirement id, text.
const std::vector<std::tuple<std::string, std::string, std::string>> kTable12 = {
    {"T1", "SR1", "Use of prepared statements with parameterized queries"},
    {"T5", "SR2", "Use of Access control, Auditing, Authentication, Encryption, Integrity controls, Backups techniques"},
    {"T10", "SR3", "Upgrade to the new version by fixing all identified flaws"},
    {"T4", "SR4", "Use of complex encryption methods that limits the risks of user data disclosure of ERP system"},
    {"T8", "SR5", "Use a firewall and proper authorization technique for granting the access right to use of the software system"},
    {"T6", "SR6", "Implement account lockout procedure, captcha and enforce the user of the ERP system to use strong passwords"},
    {"T9", "SR7", "Complex security password and account lockout should be used which locked the account after some failed login attempts"},
    {"T12", "SR8", "Use firewalls, VPN and SSL techniques"},
    {"T2", "SR9", "The database server of ERP system should be protected from the direct internet access by a firewall"},
    {"T7", "SR10", "Ensure the proper security of SMTP server"},
    {"T11", "SR11", "Implement two-factor authentication, i.e. strong password and one-time passcode"},
    {"T3", "SR12", "Use SSL/HTTPS encryption for the ERP system"},
};

// Minimal RFC 4180 reader for the export check.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(cell);
      cell.clear();
    } else if (c == '\n') {
      rows.back().push_back(cell);
      cell.clear();
      rows.emplace_back();
    } else {
      cell.push_back(c);
    }
  }
  if (rows.back().empty()) rows.pop_back();
  return rows;
}

// Step k Complete requires every predecessor Complete or Stale.
bool gating_holds(const Project& p, std::string& why) {
  for (int k = 1; k <= kStepCount; ++k) {
    if (workflow::status_of(p, k) != StepStatus::Complete) continue;
    for (int j = 1; j < k; ++j) {
      const auto s = workflow::status_of(p, j);
      if (s != StepStatus::Complete && s != StepStatus::Stale) {
        why = "step " + std::to_string(k) + " Complete while step " + std::to_string(j) + " is " +
              std::string(to_string(s));
        return false;
      }
    }
  }
  return true;
}

std::string srs_body_of(const std::string& rendered) {
  std::istringstream in(rendered);
  std::string line, out;
  bool skip_blank = false;
  while (std::getline(in, line)) {
    if (line.rfind("Generated:", 0) == 0) {
      skip_blank = true;
      continue;
    }
    if (skip_blank && line.empty()) {
      skip_blank = false;
      continue;
    }
    skip_blank = false;
    out += line + "\n";
  }
  return out;
}

}  // namespace

int main() {
  criterion("simple-risk-formula", 1.0, [](Outcome& o) {
    o.expect(risk::simple_risk(5, 10) == 50, "simple_risk(5,10) != 50");
  });

  criterion("dread-reproduction", 0, [](Outcome& o) {
    const auto p = testing::erp_project();
    for (const auto& [id, tenths] : kTable11) {
      const auto* a = p.find_assessment(id);
      o.expect(a && std::holds_alternative<DreadComponents>(a->inputs), id + " has no DREAD vector");
      if (!a) continue;
      const int got = risk::dread_score(std::get<DreadComponents>(a->inputs));
      o.expect(got == tenths, id + " scores " + std::to_string(got) + ", table says " + std::to_string(tenths));
    }
  });

  criterion("prioritization-order", 0, [](Outcome& o) {
    const auto ranked = risk::prioritize(testing::erp_project());
    o.expect(ranked.size() == kTable11.size(), "wrong number of ranked threats");
    for (std::size_t i = 0; i < ranked.size() && i < kTable11.size(); ++i)
      o.expect(ranked[i].threat_id == kTable11[i].first,
               "rank " + std::to_string(i + 1) + " is " + ranked[i].threat_id + ", expected " + kTable11[i].first);
  });

  criterion("elicitation-table", 0, [](Outcome& o) {
    const auto result = catalog::elicit_all(testing::erp_project(), testing::erp_catalog());
    const auto& reqs = result.project.requirements;
    o.expect(reqs.size() == kTable12.size(), std::to_string(reqs.size()) + " requirements created");
    for (std::size_t i = 0; i < reqs.size() && i < kTable12.size(); ++i) {
      const auto& [threat, id, text] = kTable12[i];
      o.expect(reqs[i].id == id, "expected " + id + ", got " + reqs[i].id);
      o.expect(reqs[i].text == text, id + " text differs");
      o.expect(reqs[i].threat_refs == std::vector<std::string>{threat}, id + " links differ");
    }
  });

  criterion("stride-fixture-fidelity", 0, [](Outcome& o) {
    const auto rows = read_csv(docgen::export_table(testing::erp_project(), docgen::ExportKind::Threats));
    o.expect(rows.size() == kTable10.size() + 1, "wrong number of export rows");
    const std::string check = "\xE2\x9C\x93";
    for (std::size_t i = 0; i + 1 < rows.size() && i < kTable10.size(); ++i) {
      const auto& row = rows[i + 1];
      const auto& [id, pattern, mitigated] = kTable10[i];
      o.expect(row.size() >= 10 && row[0] == id, "row " + std::to_string(i + 1) + " is not " + id);
      if (row.size() < 10) continue;
      std::string got;
      for (int c = 3; c < 9; ++c) got += row[static_cast<std::size_t>(c)] == check ? 'x' : '.';
      o.expect(got == pattern, id + " STRIDE " + got + ", expected " + pattern);
      o.expect(row[9] == mitigated, id + " Mitigated " + row[9] + ", expected " + mitigated);
    }
  });

  criterion("workflow-gating-property", 30000, [](Outcome& o) {
    // Content that satisfies every exit check, with the workflow reset to the start.
    auto base = testing::minimal_project(10);
    base.step_states = testing::fresh().step_states;
    std::mt19937 rng(424242);
    int skips = 0, finished = 0;
    for (int seq = 0; seq < 10000 && o.ok; ++seq) {
      Project p = base;
      int next_goal = 2;
      const int length = 10 + static_cast<int>(rng() % 60);
      for (int op = 0; op < length && o.ok; ++op) {
        const int current = workflow::current_step(p);
        // Half of all operations advance the current step so runs get deep.
        const int k = rng() % 2 ? current : 1 + static_cast<int>(rng() % kStepCount);
        switch (rng() % 4) {
          case 0:
          case 1:
            if (k > current) {
              ++skips;
              try {
                workflow::complete_step(p, k);
                o.expect(false, "skip to step " + std::to_string(k) + " succeeded");
              } catch (const Error& e) {
                o.expect(e.code() == ErrorCode::StepNotCurrent,
                         "skip to step " + std::to_string(k) + " failed with " + std::string(to_string(e.code())));
              }
            } else {
              try {
                p = workflow::complete_step(p, k);
              } catch (const Error&) {
              }
            }
            break;
          case 2:
            try {
              p = workflow::reopen_step(p, k);
            } catch (const Error&) {
            }
            break;
          default:
            if (rng() % 2) {
              p = commands::add(std::move(p), Goal{"G" + std::to_string(next_goal++), "extra goal", GoalSource::Interview});
            } else {
              try {
                p = commands::generate_srs(p, "2000-01-01T00:00:00Z", "doc.md").project;
              } catch (const Error&) {
              }
            }
        }
        if (workflow::status_of(p, kStepCount) == StepStatus::Complete) ++finished;
        std::string why;
        o.expect(gating_holds(p, why), why);
        o.expect(workflow::step_state_violations(p).empty(), "step state invariant broken");
      }
    }
    o.expect(skips > 1000, "too few skip attempts exercised");
    o.expect(finished > 100, "too few runs reached a complete workflow");
  });

  criterion("dread-identity-property", 10000, [](Outcome& o) {
    std::array<int, 5> v{};
    long vectors = 0;
    for (v[0] = 0; v[0] <= 10; ++v[0])
      for (v[1] = 0; v[1] <= 10; ++v[1])
        for (v[2] = 0; v[2] <= 10; ++v[2])
          for (v[3] = 0; v[3] <= 10; ++v[3])
            for (v[4] = 0; v[4] <= 10; ++v[4]) {
              ++vectors;
              const int sum = v[0] + v[1] + v[2] + v[3] + v[4];
              const int got = risk::dread_score(DreadComponents::from_array(v));
              if (got != 2 * sum || got != oracle::dread_tenths(v)) {
                o.expect(false, "vector sum " + std::to_string(sum) + " scored " + std::to_string(got));
                return;
              }
              if (risk::risk_band(got) != oracle::band(got)) {
                o.expect(false, "band mismatch at " + std::to_string(got));
                return;
              }
            }
    o.expect(vectors == 161051, "enumeration incomplete");
    // Bands cover 0..100 as Low, then Medium, then High, each non-empty.
    std::vector<RiskBand> runs;
    for (int t = 0; t <= 100; ++t)
      if (runs.empty() || runs.back() != risk::risk_band(t)) runs.push_back(risk::risk_band(t));
    o.expect(runs == std::vector<RiskBand>{RiskBand::Low, RiskBand::Medium, RiskBand::High},
             "bands are not three contiguous intervals");
  });

  criterion("round-trip-property", 30000, [](Outcome& o) {
    testing::TempDir dir;
    std::mt19937 rng(1234);
    for (int i = 0; i < 1000 && o.ok; ++i) {
      const auto p = testing::random_project(rng);
      const auto path = dir / ("p" + std::to_string(i % 8) + ".store.json");
      const auto bytes = persistence::save(p, path);
      const auto back = persistence::load(path);
      o.expect(back == p, "project " + std::to_string(i) + " changed in round trip");
      o.expect(persistence::save(back, path) == bytes, "project " + std::to_string(i) + " bytes not stable");
    }
  });

  criterion("matcher-oracle", 10000, [](Outcome& o) {
    std::mt19937 rng(5150);
    const std::vector<std::string> vocab = {"sql", "inject", "login", "admin", "session", "data", "crash",
                                            "smtp", "leak", "user", "password", "database", "server", "firewall"};
    auto pick_stride = [&](int one_in) {
      StrideSet s;
      for (Stride x : kAllStride)
        if (rng() % static_cast<unsigned>(one_in) == 0) s.insert(x);
      return s;
    };
    for (int round = 0; round < 500 && o.ok; ++round) {
      catalog::Catalog c;
      c.weights = {static_cast<int>(rng() % 5), static_cast<int>(rng() % 5)};
      const int n = static_cast<int>(rng() % 21);
      for (int i = 0; i < n; ++i) {
        std::vector<std::string> kw;
        for (const auto& w : vocab)
          if (rng() % 5 == 0) kw.push_back(w);
        if (kw.empty()) kw.push_back(vocab[rng() % vocab.size()]);
        auto tags = pick_stride(3);
        if (tags.empty()) tags.insert(kAllStride[rng() % kAllStride.size()]);
        c.entries.push_back({"e" + std::to_string(i * 7 % 13) + "x" + std::to_string(i), "t", kw, tags, "r", {}});
      }
      std::string title, description;
      for (int i = 0; i < 4; ++i) title += (rng() % 3 ? vocab[rng() % vocab.size()] : std::string("The")) + " ";
      for (int i = 0; i < 8; ++i) description += vocab[rng() % vocab.size()] + (rng() % 2 ? ", " : "! ");
      auto stride = pick_stride(2);
      if (stride.empty()) stride.insert(Stride::Spoofing);
      const auto t = testing::threat("T1", title, description, stride);
      const int limit = 1 + static_cast<int>(rng() % 10);
      const auto got = catalog::suggest(t, c, limit);
      const auto want = oracle::rank(t, c, limit);
      o.expect(got.size() == want.size(), "instance " + std::to_string(round) + " size differs");
      for (std::size_t i = 0; i < got.size() && i < want.size(); ++i) {
        o.expect(got[i].entry_id == want[i].entry_id && got[i].score == want[i].score,
                 "instance " + std::to_string(round) + " position " + std::to_string(i) + " differs");
      }
    }
  });

  criterion("end-to-end-golden-replay", 5000, [](Outcome& o) {
    testing::TempDir dir;
    const auto path = dir / "erp.store.json";
    const auto result = testing::replay_erp(path);
    o.expect(result.exit_code == 0, "replay failed: " + result.err);
    if (result.exit_code != 0) return;
    const auto p = persistence::load(path);
    for (int k = 1; k <= kStepCount; ++k)
      o.expect(workflow::status_of(p, k) == StepStatus::Complete, "step " + std::to_string(k) + " not Complete");
    const auto golden = text::trim(testing::read_file(testing::fixture_dir() / "erp" / "erp_srs.golden.sha256"));
    const auto body = srs_body_of(testing::read_file(dir / "erp.srs.md"));
    o.expect(sha256_hex(body) == golden, "SRS body checksum differs from golden");
    o.expect(body == testing::read_file(testing::fixture_dir() / "erp" / "erp_srs.golden.md"), "SRS body differs");
    o.expect(p.srs_record && p.srs_record->checksum == golden, "recorded checksum differs from golden");
  });

  std::printf("%s: %d failing criteria\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
