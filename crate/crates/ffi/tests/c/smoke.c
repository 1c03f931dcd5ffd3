#include <math.h>
#include <stdio.h>
#include <string.h>

#include "smallgon.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      const char *err = sg_last_error();                                   \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,       \
              err ? err : "no error");                                     \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  SgPolygon *p = NULL;
  CHECK(sg_polygon_dn(16, &p) == SG_STATUS_OK);
  CHECK(sg_polygon_vertex_count(p) == 16);

  SgMetrics m;
  CHECK(sg_polygon_metrics(p, &m) == SG_STATUS_OK);
  CHECK(fabs(m.perimeter - 3.1365475080) < 1e-9);
  CHECK(m.is_convex && m.is_small);

  double xy[32];
  size_t len = 0;
  CHECK(sg_polygon_vertices(p, xy, 4, &len) == SG_STATUS_BUFFER_TOO_SMALL);
  CHECK(len == 32);
  CHECK(sg_polygon_vertices(p, xy, 32, &len) == SG_STATUS_OK);
  CHECK(xy[0] == 0.0 && xy[1] == 0.0);

  SgGraphSummary g;
  CHECK(sg_polygon_diameter_graph(p, &g) == SG_STATUS_OK);
  CHECK(g.cycle_length == 11 && g.pendant_count == 5);
  CHECK(g.classification == SG_GRAPH_CLASS_D_FAMILY);

  char *json = NULL;
  CHECK(sg_polygon_to_json(p, &json) == SG_STATUS_OK);
  CHECK(strstr(json, "\"family\": \"dn\"") != NULL);
  sg_string_free(json);
  sg_polygon_free(p);

  CHECK(sg_polygon_dn(12, &p) == SG_STATUS_DOMAIN);
  CHECK(p == NULL);
  CHECK(sg_last_error() != NULL);

  SgOptimization *opt = NULL;
  CHECK(sg_optimize(SG_PROBLEM_DN_STAR, 16, 0, &opt) == SG_STATUS_OK);
  SgOptimizationSummary s;
  CHECK(sg_optimization_summary(opt, &s) == SG_STATUS_OK);
  CHECK(s.converged && s.angle_count == 6);
  CHECK(fabs(s.objective - 3.13654771649) < 1e-10);
  sg_optimization_free(opt);

  printf("smallgon %s ok\n", sg_version());
  return 0;
}
