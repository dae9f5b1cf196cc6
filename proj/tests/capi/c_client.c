/* Copyright 2026 The Pentaweave Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* Compiled as C so the public header stays valid C. */

#include "pentaweave/pentaweave.h"

int pw_c_client_smoke(void) {
  pw_mesh* mesh = NULL;
  pw_subdivision* run = NULL;
  pw_snub_options opts = pw_snub_options_default();
  size_t v = 0, e = 0, f = 0;
  long long chi = 0;
  int check = 0;
  int failures = 0;

  if (pw_mesh_generate("pentagon", &mesh) != PW_OK) return 1;
  if (pw_subdivide(mesh, "snub", 2, &opts, &run) != PW_OK) {
    pw_mesh_destroy(mesh);
    return 2;
  }
  if (pw_subdivision_counts(run, 2, &v, &e, &f, &chi, &check) != PW_OK) failures |= 4;
  if (v != 61 || e != 85 || f != 25 || chi != 1 || check != 1) failures |= 8;
  pw_subdivision_destroy(run);
  pw_mesh_destroy(mesh);
  return failures;
}
