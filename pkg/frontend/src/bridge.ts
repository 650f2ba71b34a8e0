/**
 * HTTP bridge for the browser app: serves the static assets and forwards
 * one protocol line per POST /session to a spawned qcaw server. The
 * session process is the single source of truth; requests are queued so
 * the stdio stream stays strictly serialized.
 */

import express from "express";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { StdioTransport } from "./stdio.js";

const here = dirname(fileURLToPath(import.meta.url));
const transport = new StdioTransport();
let chain: Promise<unknown> = Promise.resolve();

const app = express();
app.use(express.text({ type: "*/*" }));
app.use(express.static(join(here, "..")));

app.post("/session", (req, res) => {
  chain = chain.then(async () => {
    try {
      const line = await transport.request(String(req.body).trim());
      res.type("application/json").send(line);
    } catch (err) {
      res.status(500).send(JSON.stringify({ ok: false, error: String(err) }));
    }
  });
});

const port = Number(process.env.PORT ?? 8642);
app.listen(port, () => {
  console.log(`qcaw explorer on http://127.0.0.1:${port}/index.html`);
});
