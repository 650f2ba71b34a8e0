/**
 * Canonical JSON: keys sorted, no whitespace. Matches the server's
 * serialization (Python json.dumps with sort_keys and compact separators)
 * for the ASCII integer-only payloads this protocol exchanges, so both
 * sides can be compared byte for byte.
 */

export function canonicalJson(value: unknown): string {
  if (value === null || typeof value === "boolean") {
    return JSON.stringify(value);
  }
  if (typeof value === "number") {
    if (!Number.isInteger(value)) {
      throw new Error("protocol payloads are integer-only");
    }
    return String(value);
  }
  if (typeof value === "string") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return "[" + value.map(canonicalJson).join(",") + "]";
  }
  const obj = value as Record<string, unknown>;
  const keys = Object.keys(obj).sort();
  const body = keys.map((k) => JSON.stringify(k) + ":" + canonicalJson(obj[k]));
  return "{" + body.join(",") + "}";
}
