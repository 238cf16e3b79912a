#ifndef SFCEM_TESTS_SUPPORT_FIXTURES_H_
#define SFCEM_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "sfcem/error.h"
#include "sfcem/network.h"
#include "sfcem/rng.h"
#include "sfcem/workload.h"

namespace sfcem::testing {

struct Shape {
  int switches = 4;
  int servers = 4;
  int types = 2;
  int instances = 2;
  int requests = 10;
  int epochs = 6;
  int working = 3;
};

inline GenParams ParamsFor(const Shape& s) {
  GenParams g;
  g.vnf_types = s.types;
  g.instances_per_type = s.instances;
  g.request_count = s.requests;
  g.max_chain_length = s.types;
  g.schedule.epochs = s.epochs;
  g.schedule.working_epochs = s.working;
  return g;
}

inline ParamRanges RangesFor(const Shape& s) {
  ParamRanges r;
  r.vnf_types = s.types;
  return r;
}

// `count` scenarios sharing one network and catalog drawn from `seed`.
inline std::vector<Scenario> MakeScenarios(const Shape& s, int count, uint64_t seed) {
  const GenParams g = ParamsFor(s);
  const SubstrateNetwork net =
      BuildFatTree(s.switches, s.servers, RangesFor(s), DeriveSeed(seed, 1));
  const VnfCatalog catalog = GenerateCatalog(g, DeriveSeed(seed, 2));
  std::vector<Scenario> out;
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0;; ++attempt) {
      try {
        out.push_back(GenerateScenario(net, catalog, g,
                                       DeriveSeed(DeriveSeed(seed, 100 + i), attempt)));
        break;
      } catch (const GenerationError&) {
        if (attempt > 100) throw;
      }
    }
  }
  return out;
}

}  // namespace sfcem::testing

#endif  // SFCEM_TESTS_SUPPORT_FIXTURES_H_
