/**
 * Entry point: the service URL comes from the `?api=` query parameter,
 * defaulting to a locally running `goalrank serve`.
 */

import { WorkbenchClient } from './api.js';
import { Workbench } from './app.js';

const api = new URLSearchParams(window.location.search).get('api') ?? 'http://127.0.0.1:8000';

const workbench = new Workbench(new WorkbenchClient(api), document);
workbench.boot().catch((err: unknown) => {
  const banner = document.getElementById('fatal');
  if (banner) {
    banner.textContent = `cannot reach the goalrank service at ${api}: ${
      err instanceof Error ? err.message : String(err)
    }`;
    banner.classList.remove('hidden');
  }
});
