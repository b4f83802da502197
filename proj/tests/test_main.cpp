#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <omp.h>

int main(int argc, char** argv) {
  // Several workers even on one core, so the parallel paths get exercised.
  omp_set_num_threads(4);
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
