"""Green's relations, idempotents and orbit dimensions in linear matrix monoids."""
