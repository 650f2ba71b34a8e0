/**
 * Node transport: spawn the Python server and pipe protocol lines over
 * stdio. Requests are strictly serialized, matching the server contract.
 */

import { spawn, ChildProcessWithoutNullStreams } from "node:child_process";
import { createInterface, Interface } from "node:readline";

import type { Transport } from "./protocol.js";

export class StdioTransport implements Transport {
  private proc: ChildProcessWithoutNullStreams;
  private lines: Interface;
  private queue: ((line: string) => void)[] = [];
  private pending: string[] = [];

  constructor(command?: string, args?: string[]) {
    const cmd = command ?? process.env.QCAW_CMD ?? "qcaw";
    const argv = args ?? (command ? [] : ["serve", "--session"]);
    this.proc = spawn(cmd, argv, { stdio: ["pipe", "pipe", "pipe"] });
    this.lines = createInterface({ input: this.proc.stdout });
    this.lines.on("line", (line) => {
      const waiter = this.queue.shift();
      if (waiter) waiter(line);
      else this.pending.push(line);
    });
  }

  request(line: string): Promise<string> {
    return new Promise((resolve, reject) => {
      const ready = this.pending.shift();
      if (ready !== undefined) {
        resolve(ready);
        return;
      }
      this.queue.push(resolve);
      this.proc.stdin.write(line + "\n", (err) => {
        if (err) reject(err);
      });
    });
  }

  async close(): Promise<void> {
    this.proc.stdin.end();
    await new Promise<void>((resolve) => {
      this.proc.once("exit", () => resolve());
      setTimeout(() => {
        this.proc.kill();
        resolve();
      }, 2000);
    });
  }
}
