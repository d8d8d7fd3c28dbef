import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 20_000,
    // the integration suite spawns one real server on a fixed port
    fileParallelism: false,
  },
});
