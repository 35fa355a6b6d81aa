#include <stdio.h>
#include <string.h>

#include "irredcert.h"

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                  \
    }                                                            \
  } while (0)

int main(void) {
  IrcPoly *f = NULL;
  EXPECT(irc_poly_parse("27,108,108,108,108,108,4", &f) == IRC_STATUS_OK);
  EXPECT(irc_poly_degree(f) == 6);

  uint64_t primes[] = {2, 3};
  IrcCertificate *cert = NULL;
  EXPECT(irc_check(f, primes, 2, false, 10000, IRC_DISCOVERY_MODE_ENDPOINTS, &cert) ==
         IRC_STATUS_OK);
  EXPECT(irc_certificate_verdict(cert) == IRC_VERDICT_IRREDUCIBLE);
  EXPECT(irc_certificate_rule(cert) == IRC_RULE_THEOREM_B);
  EXPECT(irc_certificate_factor_degree_multiple(cert) == 6);

  char *json = irc_certificate_to_json(cert);
  EXPECT(json != NULL && strstr(json, "\"fired_rule\": \"TheoremB\"") != NULL);
  EXPECT(irc_certificate_recheck(json) == IRC_STATUS_OK);
  irc_string_free(json);
  irc_certificate_free(cert);
  irc_poly_free(f);

  int64_t coeffs[] = {4, 6, 4, 1};
  EXPECT(irc_poly_from_coeffs(coeffs, 4, &f) == IRC_STATUS_OK);
  IrcFactorKind kind;
  char *text = NULL;
  EXPECT(irc_factorize(f, &kind, &text) == IRC_STATUS_OK);
  EXPECT(kind == IRC_FACTOR_KIND_FACTORED);
  EXPECT(strcmp(text, "(x+2)(x^2+2x+2)") == 0);
  irc_string_free(text);
  irc_poly_free(f);

  EXPECT(irc_poly_parse("1,,2", &f) == IRC_STATUS_PARSE_ERROR);
  EXPECT(strlen(irc_last_error()) > 0);

  puts("ok");
  return 0;
}
