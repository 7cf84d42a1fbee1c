import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    include: ['test/**/*.test.ts'],
    // the e2e file boots the ranking service once; give it room
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
