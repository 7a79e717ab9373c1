/* Spawns the Python arena service for the live-session tests and tears
 * it down afterwards.  The chosen base URL is written to a file because
 * global setup runs in a separate process from the test workers. */

import { spawn, type ChildProcess } from "node:child_process";
import { writeFileSync, rmSync } from "node:fs";
import { fileURLToPath } from "node:url";

const URL_FILE = fileURLToPath(new URL("./.arena-url", import.meta.url));

async function waitReady(base: string, deadlineMs: number): Promise<boolean> {
  const deadline = Date.now() + deadlineMs;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${base}/session/probe`);
      if (response.status === 404) {
        return true;
      }
    } catch {
      // not up yet
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  return false;
}

export default async function setup(): Promise<() => void> {
  let child: ChildProcess | null = null;
  let base = "";
  for (const port of [8807, 8911, 9017]) {
    base = `http://127.0.0.1:${port}`;
    child = spawn("python3", ["-m", "cantorgame", "serve", "--port", String(port)], {
      stdio: "ignore",
    });
    if (await waitReady(base, 20000)) {
      break;
    }
    child.kill();
    child = null;
  }
  if (!child) {
    throw new Error("could not start the arena service (is cantorgame installed?)");
  }
  writeFileSync(URL_FILE, base);
  const proc = child;
  return () => {
    proc.kill();
    rmSync(URL_FILE, { force: true });
  };
}
